//! Mechanical checker for hand-written derivations of relations.
//!
//! A *fact* is an equality `lhs = rhs` of words, meaning `lhs·rhs⁻¹` lies in
//! the normal closure of the given relators. Each step claims a new fact and
//! names its justification; the checker accepts it only if the justification
//! applies literally. No search is performed.

use serde::Serialize;

use super::presentation::{parse_word, Presentation, SymbolTable};
use super::word::Word;

/// Reference to an earlier fact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FactRef {
    /// One of the input relators, i.e. the fact `r = 1`.
    Relator(usize),
    /// An earlier step of the script.
    Step(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Justification {
    /// `lhs` and `rhs` are equal in the free group.
    FreeReduction,
    /// Equal in the free group after expanding named words.
    Substitute,
    /// `lhs·rhs⁻¹` is a free conjugate of the referenced fact or its inverse.
    Fact(FactRef),
    /// `lhs·rhs⁻¹` equals `by·f·by⁻¹` (or its inverse) for the referenced fact `f`.
    Conjugate { fact: FactRef, by: String },
    /// From `x y x⁻¹ = yᵉ`, `yⁿ = 1` and `xⁿ = 1`, conclude
    /// `x⁻¹ y x = yᵏ` with `k = eᵐ mod n` and `m = n − 1`.
    ExponentMod {
        x: String,
        y: String,
        e: u64,
        n: u64,
        m: u64,
        conjugation: FactRef,
        x_order: FactRef,
        y_order: FactRef,
    },
    /// `lhs = w₁ = w₂ = … = rhs`, each link with its own (non-chain)
    /// justification; the last link word must be `rhs`.
    Chain(Vec<(String, Justification)>),
}

#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub lhs: String,
    pub rhs: String,
    pub justification: Justification,
}

impl Step {
    pub fn new(lhs: &str, rhs: &str, justification: Justification) -> Self {
        Step {
            lhs: lhs.into(),
            rhs: rhs.into(),
            justification,
        }
    }
}

/// Named words plus steps. Names are bound in order, so a later definition
/// may use earlier names.
#[derive(Clone, Debug, Serialize)]
pub struct DerivationScript {
    pub generators: Vec<String>,
    pub names: Vec<(String, String)>,
    pub relator_labels: Vec<String>,
    pub steps: Vec<Step>,
    /// Indices of the steps whose facts are the script's conclusions.
    pub conclusions: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepOutcome {
    pub index: usize,
    pub claim: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub valid: bool,
    pub steps: Vec<StepOutcome>,
    /// First rejected step and the reason.
    pub failure: Option<(usize, String)>,
    /// Conclusions as `lhs = rhs` strings (only when valid).
    pub conclusions: Vec<String>,
}

fn conj_or_inverse(c: &Word, f: &Word) -> bool {
    c.is_conjugate_to(f) || c.is_conjugate_to(&f.inverse())
}

struct Checker<'a> {
    relators: &'a [Word],
    facts: Vec<Word>,
    symbols: SymbolTable,
}

impl Checker<'_> {
    fn word(&self, s: &str) -> Result<Word, String> {
        parse_word(s, &self.symbols)
    }

    fn fact(&self, r: &FactRef) -> Result<Word, String> {
        match r {
            FactRef::Relator(i) => self
                .relators
                .get(*i)
                .cloned()
                .ok_or_else(|| format!("no relator {i}")),
            FactRef::Step(i) => self
                .facts
                .get(*i)
                .cloned()
                .ok_or_else(|| format!("step {i} is not an earlier step")),
        }
    }

    fn check(&self, lhs: &Word, rhs: &Word, j: &Justification, in_chain: bool) -> Result<String, String> {
        let claim = lhs.mul(&rhs.inverse());
        match j {
            Justification::FreeReduction | Justification::Substitute => {
                if claim.is_identity() {
                    Ok("equal in the free group".into())
                } else {
                    Err(format!("not freely equal; quotient {claim}"))
                }
            }
            Justification::Fact(r) => {
                let f = self.fact(r)?;
                if conj_or_inverse(&claim, &f) {
                    Ok(format!("conjugate of {r:?}"))
                } else {
                    Err(format!("quotient {claim} is not a conjugate of {r:?} = {f} or its inverse"))
                }
            }
            Justification::Conjugate { fact, by } => {
                let f = self.fact(fact)?;
                let g = self.word(by)?;
                let c = f.conjugate(&g);
                if claim == c || claim == c.inverse() {
                    Ok(format!("{by}·{fact:?}·{by}⁻¹"))
                } else {
                    Err(format!("quotient {claim} differs from {by}·f·{by}⁻¹ = {c}"))
                }
            }
            Justification::ExponentMod {
                x,
                y,
                e,
                n,
                m,
                conjugation,
                x_order,
                y_order,
            } => {
                let (xw, yw) = (self.word(x)?, self.word(y)?);
                if *n == 0 || (m + 1) % n != 0 {
                    return Err(format!("m = {m} is not ≡ −1 mod n = {n}"));
                }
                let conj = xw.mul(&yw).mul(&xw.inverse()).mul(&yw.pow(-(*e as i64)));
                if !conj_or_inverse(&conj, &self.fact(conjugation)?) {
                    return Err(format!("{conjugation:?} is not x y x⁻¹ = y^{e}"));
                }
                if !conj_or_inverse(&yw.pow(*n as i64), &self.fact(y_order)?) {
                    return Err(format!("{y_order:?} is not y^{n} = 1"));
                }
                if !conj_or_inverse(&xw.pow(*n as i64), &self.fact(x_order)?) {
                    return Err(format!("{x_order:?} is not x^{n} = 1"));
                }
                let k = mod_pow(*e, *m, *n);
                let expected = xw
                    .inverse()
                    .mul(&yw)
                    .mul(&xw)
                    .mul(&yw.pow(-(k as i64)));
                if conj_or_inverse(&claim, &expected) {
                    Ok(format!("{e}^{m} ≡ {k} (mod {n})"))
                } else {
                    Err(format!(
                        "claim does not match x⁻¹ y x = y^{k} ({e}^{m} ≡ {k} mod {n})"
                    ))
                }
            }
            Justification::Chain(links) => {
                if in_chain {
                    return Err("nested chains are not allowed".into());
                }
                if links.is_empty() {
                    return Err("empty chain".into());
                }
                let mut prev = lhs.clone();
                for (i, (ws, lj)) in links.iter().enumerate() {
                    let w = self.word(ws)?;
                    self.check(&prev, &w, lj, true)
                        .map_err(|e| format!("link {i} (= {ws}): {e}"))?;
                    prev = w;
                }
                if prev != *rhs {
                    return Err(format!("chain ends at {prev}, not at rhs {rhs}"));
                }
                Ok(format!("chain of {} links", links.len()))
            }
        }
    }
}

/// `base^exp mod m`.
pub fn mod_pow(base: u64, exp: u64, m: u64) -> u64 {
    (0..exp).fold(1 % m, |acc, _| acc * (base % m) % m)
}

/// Checks every step of `script` against `relators`. Stops at the first
/// rejected step.
pub fn check_derivation(relators: &[Word], script: &DerivationScript) -> Verdict {
    let mut symbols = SymbolTable::from_generators(&script.generators);
    let mut steps = Vec::new();
    let reject = |steps: Vec<StepOutcome>, i: usize, msg: String| Verdict {
        valid: false,
        steps,
        failure: Some((i, msg)),
        conclusions: Vec::new(),
    };
    for (name, expr) in &script.names {
        match parse_word(expr, &symbols) {
            Ok(w) => symbols.bind(name, w),
            Err(e) => return reject(steps, 0, format!("bad definition of {name}: {e}")),
        }
    }
    let mut ck = Checker {
        relators,
        facts: Vec::new(),
        symbols,
    };
    for (i, step) in script.steps.iter().enumerate() {
        let claim = format!("{} = {}", step.lhs, step.rhs);
        let parsed = ck.word(&step.lhs).and_then(|l| Ok((l, ck.word(&step.rhs)?)));
        let result = parsed.and_then(|(l, r)| {
            ck.check(&l, &r, &step.justification, false)
                .map(|d| (l.mul(&r.inverse()), d))
        });
        match result {
            Ok((fact, detail)) => {
                ck.facts.push(fact);
                steps.push(StepOutcome {
                    index: i,
                    claim,
                    ok: true,
                    detail,
                });
            }
            Err(msg) => {
                steps.push(StepOutcome {
                    index: i,
                    claim,
                    ok: false,
                    detail: msg.clone(),
                });
                return reject(steps, i, msg);
            }
        }
    }
    let mut conclusions = Vec::new();
    for &c in &script.conclusions {
        match script.steps.get(c) {
            Some(s) => conclusions.push(format!("{} = {}", s.lhs, s.rhs)),
            None => return reject(steps, c, "conclusion refers to a missing step".into()),
        }
    }
    Verdict {
        valid: true,
        steps,
        failure: None,
        conclusions,
    }
}

/// Relations forced on `a = φ(σ)`, `b = φ(τ)` by a unital cubic map: the
/// `Pol₂(C₃)` relators applied to the pairs `(a⁻¹ba⁻¹, a⁻¹b⁻¹)` and
/// `(b⁻¹a⁻¹, b⁻¹ab⁻¹)`, in that order (eight relators).
pub fn cubic_relations() -> Vec<Word> {
    cubic_relations_for(&Presentation::pol2_c3())
}

/// As [`cubic_relations`], with the relators of `pol2` in place of the
/// standard `Pol₂(C₃)` presentation.
pub fn cubic_relations_for(pol2: &Presentation) -> Vec<Word> {
    let ab = Presentation::new(vec!["a".into(), "b".into()], vec![]);
    let w = |s: &str| ab.parse_word(s).expect("fixed word");
    let pairs = [
        [w("a^-1*b*a^-1"), w("a^-1*b^-1")],
        [w("b^-1*a^-1"), w("b^-1*a*b^-1")],
    ];
    pairs
        .iter()
        .flat_map(|imgs| pol2.relators.iter().map(move |r| r.substitute(imgs)))
        .collect()
}

fn names() -> Vec<(String, String)> {
    vec![
        ("z".into(), "a^-1*b^-1".into()),
        ("w".into(), "a^-1*b*a^-1".into()),
        ("v".into(), "z*w^-1".into()),
    ]
}

fn labels() -> Vec<String> {
    ["8a", "8b", "8c", "8d", "8e", "8f", "8g", "8h"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

/// From the eight cubic relations to `z³ = w³ = v³ = 1`, `z` central in
/// `⟨v, w⟩`, and finally the three relators of `Γ`.
pub fn cubic_script() -> DerivationScript {
    use FactRef::{Relator as R, Step as S};
    use Justification::*;
    let a_inv = || "a^-1".to_string();
    let link = |w: &str, j: Justification| (w.to_string(), j);
    let steps = vec![
        // 0
        Step::new("w^9", "1", Fact(R(0))),
        Step::new("v^9", "1", Conjugate { fact: R(5), by: a_inv() }),
        Step::new("z^9", "1", Fact(R(1))),
        // (8e) from (8b): conjugation x ↦ a x a⁻¹
        Step::new("(b^-1*a^-1)^9", "1", Conjugate { fact: S(2), by: "a".into() }),
        Step::new("z*w*z^-1", "w^4", Fact(R(2))),
        // 5
        Step::new("w*z*w^-1", "z^4", Fact(R(3))),
        Step::new("v*z*v^-1", "z^4", Conjugate { fact: R(6), by: a_inv() }),
        Step::new("z*v*z^-1", "v^4", Conjugate { fact: R(7), by: a_inv() }),
        Step::new(
            "w^-1*z*w",
            "z^7",
            ExponentMod {
                x: "w".into(),
                y: "z".into(),
                e: 4,
                n: 9,
                m: 8,
                conjugation: S(5),
                x_order: S(0),
                y_order: S(2),
            },
        ),
        Step::new(
            "z^4",
            "z^7",
            Chain(vec![
                link("v*z*v^-1", Fact(S(6))),
                link("z*w^-1*z*w*z^-1", Substitute),
                link("z*z^7*z^-1", Fact(S(8))),
                link("z^7", FreeReduction),
            ]),
        ),
        // 10
        Step::new("z^3", "1", Fact(S(9))),
        Step::new(
            "w*z*w^-1",
            "z",
            Chain(vec![link("z^4", Fact(S(5))), link("z", Fact(S(10)))]),
        ),
        Step::new(
            "w^4",
            "w",
            Chain(vec![link("z*w*z^-1", Fact(S(4))), link("w", Fact(S(11)))]),
        ),
        Step::new("w^3", "1", Fact(S(12))),
        Step::new(
            "z*v*z^-1",
            "v",
            Chain(vec![
                link("z*z*w^-1*z^-1", Substitute),
                link("z*w^-1", Fact(S(11))),
                link("v", Substitute),
            ]),
        ),
        // 15
        Step::new(
            "v^4",
            "v",
            Chain(vec![link("z*v*z^-1", Fact(S(7))), link("v", Fact(S(14)))]),
        ),
        Step::new("v^3", "1", Fact(S(15))),
        Step::new("z*w", "w*z", Fact(S(11))),
        Step::new("z*v", "v*z", Fact(S(14))),
        Step::new("(b*a)^3", "1", Fact(S(10))),
        // 20
        Step::new("(a*b^-1*a)^3", "1", Fact(S(13))),
        Step::new("[b*a, a*b^-1*a]", "1", Fact(S(11))),
    ];
    DerivationScript {
        generators: vec!["a".into(), "b".into()],
        names: names(),
        relator_labels: labels(),
        steps,
        conclusions: vec![10, 13, 16, 17, 18, 19, 20, 21],
    }
}

/// Converse direction for `β_σ`: from the relators of `Γ`, the pair
/// `(w, z) = (a⁻¹ba⁻¹, a⁻¹b⁻¹)` satisfies the `Pol₂(C₃)` relations.
pub fn lemma_script() -> DerivationScript {
    use FactRef::{Relator as R, Step as S};
    use Justification::*;
    let link = |w: &str, j: Justification| (w.to_string(), j);
    let steps = vec![
        Step::new("z^3", "1", Fact(R(0))),
        Step::new("w^3", "1", Fact(R(1))),
        Step::new("z*w", "w*z", Fact(R(2))),
        Step::new(
            "w^9",
            "1",
            Chain(vec![
                link("w^6", Fact(S(1))),
                link("w^3", Fact(S(1))),
                link("1", Fact(S(1))),
            ]),
        ),
        Step::new(
            "z^9",
            "1",
            Chain(vec![
                link("z^6", Fact(S(0))),
                link("z^3", Fact(S(0))),
                link("1", Fact(S(0))),
            ]),
        ),
        Step::new(
            "z*w*z^-1",
            "w^4",
            Chain(vec![link("w", Fact(S(2))), link("w^4", Fact(S(1)))]),
        ),
        Step::new(
            "w*z*w^-1",
            "z^4",
            Chain(vec![link("z", Fact(S(2))), link("z^4", Fact(S(0)))]),
        ),
    ];
    DerivationScript {
        generators: vec!["a".into(), "b".into()],
        names: names(),
        relator_labels: vec!["(ba)^3".into(), "(ab^-1a)^3".into(), "[ba,ab^-1a]".into()],
        steps,
        conclusions: vec![3, 4, 5, 6],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hand_transcribed() -> Vec<Word> {
        let mut sym = SymbolTable::from_generators(&["a".into(), "b".into()]);
        for (n, e) in [
            ("P", "a^-1*b*a^-1"),
            ("Q", "a^-1*b^-1"),
            ("R", "b^-1*a^-1"),
            ("S", "b^-1*a*b^-1"),
        ] {
            let w = parse_word(e, &sym).unwrap();
            sym.bind(n, w);
        }
        [
            "P^9",
            "Q^9",
            "Q*P*Q^-1*P^-4",
            "P*Q*P^-1*Q^-4",
            "R^9",
            "S^9",
            "S*R*S^-1*R^-4",
            "R*S*R^-1*S^-4",
        ]
        .iter()
        .map(|s| parse_word(s, &sym).unwrap())
        .collect()
    }

    #[test]
    fn relations_match_transcription() {
        let auto = cubic_relations();
        let hand = hand_transcribed();
        assert_eq!(auto.len(), 8);
        for (x, y) in auto.iter().zip(&hand) {
            assert!(x.is_conjugate_to(y), "{x} vs {y}");
        }
    }

    #[test]
    fn cubic_script_validates() {
        let v = check_derivation(&cubic_relations(), &cubic_script());
        assert!(v.valid, "{:?}", v.failure);
        assert!(v.conclusions.contains(&"z^3 = 1".to_string()));
        assert!(v.steps[8].detail.contains("4^8 ≡ 7 (mod 9)"));
    }

    #[test]
    fn lemma_script_validates() {
        let v = check_derivation(&Presentation::gamma().relators, &lemma_script());
        assert!(v.valid, "{:?}", v.failure);
    }

    #[test]
    fn false_claim_is_rejected() {
        let mut s = cubic_script();
        s.steps.push(Step::new("z^2", "1", Justification::Fact(FactRef::Step(10))));
        let v = check_derivation(&cubic_relations(), &s);
        assert!(!v.valid);
        assert_eq!(v.failure.unwrap().0, 22);
    }

    #[test]
    fn mod_pow_values() {
        assert_eq!(mod_pow(4, 8, 9), 7);
        assert_eq!(mod_pow(4, 3, 9), 1);
    }
}
