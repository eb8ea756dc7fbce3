//! Explicit model of `Pol₂(C₃)` as an extension of `C₃` by `V ≅ (Z/3)²`.
//!
//! Elements are pairs `(ξ, g)`, `ξ = x·e₁ + y·e₂`, with
//! `(ξ, g)(η, h) = (ξ + g·η + ψ(g, h), gh)` and `ψ(g, h) = h̄·c(g)`, where
//! `c(1) = 0`, `c(σ) = e₁`, `c(τ) = e₂` and `1̄ = 0`, `σ̄ = 1`, `τ̄ = 2`.

use std::sync::Arc;

use serde::Serialize;

use super::maps::{DegreeOracle, MapTable};
use super::{find_isomorphism, FiniteGroup, PolymapError};

/// `C₃` elements are indices 0 = 1, 1 = σ, 2 = τ = σ².
type C3 = usize;
type V = [usize; 2];

fn act(g: C3, v: V) -> V {
    let [x, y] = v;
    match g {
        0 => v,
        // σ: e₁ ↦ −e₁ + e₂, e₂ ↦ −e₁
        1 => [(6 - x - y) % 3, x],
        // τ: e₁ ↦ −e₂, e₂ ↦ e₁ − e₂
        _ => [y, (6 - x - y) % 3],
    }
}

pub fn psi(g: C3, h: C3) -> V {
    let c = match g {
        0 => [0, 0],
        1 => [1, 0],
        _ => [0, 1],
    };
    [(c[0] * h) % 3, (c[1] * h) % 3]
}

fn encode(v: V, g: C3) -> usize {
    g * 9 + v[0] * 3 + v[1]
}

fn decode(i: usize) -> (V, C3) {
    ([(i / 3) % 3, i % 3], i / 9)
}

/// One named internal check of the model.
#[derive(Clone, Debug, Serialize)]
pub struct ModelCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct Pol2Model {
    pub group: Arc<FiniteGroup>,
    /// `a = (0, σ)`.
    pub a: usize,
    /// `b = (0, τ)`.
    pub b: usize,
    pub checks: Vec<ModelCheck>,
}

impl Pol2Model {
    pub fn element(&self, xi: V, g: C3) -> usize {
        encode(xi, g)
    }

    pub fn coordinates(&self, i: usize) -> (V, C3) {
        decode(i)
    }

    /// Formats an element as `(x·e₁ + y·e₂, g)`.
    pub fn describe(&self, i: usize) -> String {
        let ([x, y], g) = decode(i);
        let g = ["1", "σ", "τ"][g];
        format!("({x}e1+{y}e2, {g})")
    }

    /// The universal quadratic map `C₃ → model`, `g ↦ (0, g)`.
    pub fn universal_map(&self) -> MapTable {
        MapTable::new(
            Arc::new(FiniteGroup::cyclic(3)),
            Arc::clone(&self.group),
            (0..3).map(|g| encode([0, 0], g)).collect(),
        )
        .expect("well-formed")
    }
}

/// Builds the model and runs its internal checks; any failing check is an
/// error.
pub fn build_pol2_model() -> Result<Pol2Model, PolymapError> {
    let n = 27;
    let table = (0..n)
        .map(|i| {
            let (xi, g) = decode(i);
            (0..n)
                .map(|j| {
                    let (eta, h) = decode(j);
                    let ge = act(g, eta);
                    let p = psi(g, h);
                    encode(
                        [(xi[0] + ge[0] + p[0]) % 3, (xi[1] + ge[1] + p[1]) % 3],
                        (g + h) % 3,
                    )
                })
                .collect()
        })
        .collect();
    let labels = (0..n)
        .map(|i| {
            let ([x, y], g) = decode(i);
            format!("({x}e1+{y}e2,{})", ["1", "s", "t"][g])
        })
        .collect();
    let group = FiniteGroup::from_table("Pol2(C3)", table, Some(labels))?;
    let (a, b) = (encode([0, 0], 1), encode([0, 0], 2));
    let g = &group;
    let mut checks = Vec::new();
    let mut check = |name: &str, passed: bool| {
        checks.push(ModelCheck {
            name: name.into(),
            passed,
        })
    };
    let e = g.identity();
    check("a^9 = 1", g.pow(a, 9) == e);
    check("b^9 = 1", g.pow(b, 9) == e);
    check("b a b^-1 = a^4", g.mul(g.mul(b, a), g.inv(b)) == g.pow(a, 4));
    check("a b a^-1 = b^4", g.mul(g.mul(a, b), g.inv(a)) == g.pow(b, 4));
    check("a^2 = (e1, τ)", g.pow(a, 2) == encode([1, 0], 2));
    check("a^3 = (e1+e2, 1)", g.pow(a, 3) == encode([1, 1], 0));
    check("b^3 = (2e1+2e2, 1)", g.pow(b, 3) == encode([2, 2], 0));
    check("b^-1 = (e1, σ)", g.inv(b) == encode([1, 0], 1));
    check("ψ(σ, τ) = 2e1", psi(1, 2) == [2, 0]);
    check("exponent = 9", g.exponent() == 9);
    check("a, b generate", g.generated_subgroup(&[a, b]).len() == 27);
    let c933 = FiniteGroup::metacyclic(9, 3, 4)?;
    check(
        "isomorphic to C9 ⋊ C3 (×4)",
        find_isomorphism(g, &c933)?.is_some(),
    );
    check(
        "not isomorphic to Heisenberg mod 3",
        find_isomorphism(g, &FiniteGroup::heisenberg(3))?.is_none(),
    );
    let group = Arc::new(group);
    let model = Pol2Model {
        group: Arc::clone(&group),
        a,
        b,
        checks: Vec::new(),
    };
    let phi = model.universal_map();
    let mut oracle = DegreeOracle::new(Arc::clone(&phi.domain), Arc::clone(&group));
    check(
        "universal map has degree exactly 2",
        oracle.degree_at_most(&phi.images, 2) && !oracle.degree_at_most(&phi.images, 1),
    );
    if let Some(bad) = checks.iter().find(|c| !c.passed) {
        return Err(PolymapError::ModelCheck(bad.name.clone()));
    }
    Ok(Pol2Model { checks, ..model })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_builds() {
        let m = build_pol2_model().unwrap();
        assert_eq!(m.group.order(), 27);
        assert!(m.checks.iter().all(|c| c.passed));
        assert_eq!(m.describe(m.group.pow(m.a, 2)), "(1e1+0e2, τ)");
    }

    #[test]
    fn sigma_and_tau_actions_are_inverse() {
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(act(1, act(2, [x, y])), [x, y]);
                assert_eq!(act(1, act(1, [x, y])), act(2, [x, y]));
            }
        }
    }
}
