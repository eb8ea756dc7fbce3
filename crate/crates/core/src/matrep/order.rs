use rayon::prelude::*;
use serde::Serialize;

use super::evaluator::WordEvaluator;
use super::mat3::Mat3;
use crate::exactfields::{RatFuncGf3, Ring};
use crate::fpgroup::Word;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum OrderVerdict {
    /// `trace(M^power)` is not in `F₃`, so `M` has infinite order.
    Certified { power: u32, trace: String },
    /// Every tested trace was constant. Never read as "finite".
    Inconclusive { traces: Vec<String> },
}

impl OrderVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, OrderVerdict::Certified { .. })
    }
}

/// Infinite-order test over `F₃(t)`: a finite-order matrix has root-of-unity
/// eigenvalues, so the traces of all its powers are algebraic over `F₃`,
/// hence constants. Powers `1..=max_power` are tried.
pub fn infinite_order_certificate(
    ev: &WordEvaluator<RatFuncGf3>,
    w: &Word,
    max_power: u32,
) -> OrderVerdict {
    let m = ev.eval_word(w);
    let mut p = Mat3::identity();
    let mut traces = Vec::new();
    for j in 1..=max_power {
        p = p.mul(&m);
        let tr = p.trace();
        if tr.as_constant().is_none() {
            return OrderVerdict::Certified {
                power: j,
                trace: tr.to_string(),
            };
        }
        traces.push(tr.to_string());
    }
    OrderVerdict::Inconclusive { traces }
}

/// Outcome of an exhaustive search for short relations between two elements.
#[derive(Clone, Debug, Serialize)]
pub struct NoRelation {
    pub max_len: usize,
    pub words_checked: u64,
    /// Shortlex-first relation of minimal length, as a word in `x = a`,
    /// `y = b`.
    pub relation: Option<Word>,
}

impl NoRelation {
    pub fn no_relation(&self) -> bool {
        self.relation.is_none()
    }
}

/// Evaluates every nonempty freely reduced word in `x`, `y` of length at most
/// `max_len` and reports the first (by length, then shortlex) that is trivial
/// in the evaluator's sense. Absence of a relation is evidence only.
pub fn bounded_no_relation<R: Ring>(
    ev: &WordEvaluator<R>,
    x: &Word,
    y: &Word,
    max_len: usize,
) -> NoRelation {
    let letters: [i32; 4] = [1, -1, 2, -2];
    let img = |l: i32| -> Mat3<R> {
        let w = if l.abs() == 1 { x } else { y };
        ev.eval_word(&if l > 0 { w.clone() } else { w.inverse() })
    };
    let imgs: Vec<(i32, Mat3<R>)> = letters.iter().map(|&l| (l, img(l))).collect();
    let mut frontier: Vec<(Vec<i32>, Mat3<R>)> = vec![(Vec::new(), Mat3::identity())];
    let mut checked = 0u64;
    for _ in 0..max_len {
        frontier = frontier
            .par_iter()
            .flat_map_iter(|(w, m)| {
                imgs.iter()
                    .filter(move |(l, _)| w.last() != Some(&-*l))
                    .map(move |(l, g)| {
                        let mut nw = w.clone();
                        nw.push(*l);
                        (nw, m.mul(g))
                    })
            })
            .collect();
        checked += frontier.len() as u64;
        if let Some((w, _)) = frontier.iter().find(|(_, m)| ev.is_trivial(m)) {
            return NoRelation {
                max_len,
                words_checked: checked,
                relation: Some(Word::from_letters(w.iter().copied())),
            };
        }
    }
    NoRelation {
        max_len,
        words_checked: checked,
        relation: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrep::evaluator::rho_generators;

    #[test]
    fn a_and_b_certified() {
        let ev = rho_generators().unwrap();
        assert_eq!(
            infinite_order_certificate(&ev, &Word::gen(1), 3),
            OrderVerdict::Certified { power: 1, trace: "t".into() }
        );
        assert_eq!(
            infinite_order_certificate(&ev, &Word::gen(0), 3),
            OrderVerdict::Certified { power: 2, trace: "t".into() }
        );
        let ba = Word::gen(1).mul(&Word::gen(0));
        assert!(!infinite_order_certificate(&ev, &ba, 3).is_certified());
    }

    #[test]
    fn finite_order_gives_relation() {
        let ev = rho_generators().unwrap();
        let ba = Word::gen(1).mul(&Word::gen(0));
        let r = bounded_no_relation(&ev, &ba, &Word::gen(0).pow(3), 4);
        assert_eq!(r.relation.unwrap().to_string(), "a^3");
        let same = bounded_no_relation(&ev, &Word::gen(0), &Word::gen(0), 3);
        assert_eq!(same.relation.unwrap().to_string(), "a*b^-1");
    }
}
