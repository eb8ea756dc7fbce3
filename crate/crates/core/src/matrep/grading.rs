//! The `r`-grading of `π`, the map `μ: Γ → C₃`, and descent of `π(Γ°)` into
//! `PSL₃(Z[ω])`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use super::mat3::Mat3;
use super::MatrepError;
use crate::exactfields::{eisen_gcd, Eisen, Field, Ring, Tower};
use crate::fpgroup::Word;
use crate::polymap::FiniteGroup;

/// `d(w)`: `a ↦ 2`, `b ↦ 1`, negated for inverses.
pub fn graded_weight(w: &Word) -> i64 {
    w.letters()
        .iter()
        .map(|&l| {
            let base = if l.unsigned_abs() == 1 { 2 } else { 1 };
            base * l.signum() as i64
        })
        .sum()
}

/// `μ(w)` as an element of `C₃ = {0 = 1, 1 = σ, 2 = τ}`, computed by
/// evaluating `w` in the cyclic group with `a ↦ σ`, `b ↦ τ`.
pub fn mu(w: &Word) -> usize {
    FiniteGroup::cyclic(3).eval_word(w, &[1, 2])
}

/// Clears denominators and divides out the content (Euclidean gcd of the
/// entries in `Z[ω]`). The result is integral with content a unit.
pub fn clear_content(m: &Mat3<Eisen>) -> Result<Mat3<Eisen>, MatrepError> {
    let den = m
        .entries()
        .fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator_lcm()));
    let m = m.map(|x| x.scale_int(&den));
    let mut g = Eisen::zero();
    for x in m.entries() {
        g = eisen_gcd(&g, x)?;
    }
    if g.is_zero() {
        return Err(MatrepError::Invalid("zero matrix".into()));
    }
    let ginv = g.inv()?;
    Ok(m.scale(&ginv))
}

/// A `PSL₃(Z[ω])` representative with determinant 1.
#[derive(Clone, Debug, Serialize)]
pub struct Normalized {
    pub matrix: Mat3<Eisen>,
    /// Determinant after content normalization, before the sign fix (±1).
    pub raw_det: i64,
}

/// Normalizes an `Eisen` matrix representing an element of `PSL₃`: clears
/// content, requires `det ∈ {±1}`, and negates if needed so that `det = 1`.
pub fn normalize_psl(m: &Mat3<Eisen>) -> Result<Normalized, MatrepError> {
    let n = clear_content(m)?;
    let d = n.det();
    let one = Eisen::one();
    if d == one {
        Ok(Normalized { matrix: n, raw_det: 1 })
    } else if d == one.neg() {
        Ok(Normalized {
            matrix: n.neg(),
            raw_det: -1,
        })
    } else {
        Err(MatrepError::NotInPsl3(d.to_string()))
    }
}

/// Strips the scalar `r^{d(w)}` from `π(w)` (`M`, evaluated exactly) and
/// returns a determinant-1 representative over `Z[ω]`.
pub fn descend_and_normalize(m: &Mat3<Tower>, w: &Word) -> Result<Normalized, MatrepError> {
    let d = graded_weight(w);
    if d.rem_euclid(3) != 0 {
        return Err(MatrepError::NotInGammaCirc(d));
    }
    let mut eis = Mat3::<Eisen>::zero();
    for i in 0..3 {
        for j in 0..3 {
            let x = m.get(i, j);
            if !x.e[1].is_zero() || !x.e[2].is_zero() {
                return Err(MatrepError::Grading(format!(
                    "entry ({i},{j}) = {x} is not in Q(ω)"
                )));
            }
            eis.m[i][j] = x.e[0].clone();
        }
    }
    normalize_psl(&eis)
}

/// Checks the grading claim for `π(w)`: every nonzero entry is
/// `r^{d(w) mod 3}·Eisen`.
pub fn grading_consistent(m: &Mat3<Tower>, w: &Word) -> bool {
    let k = graded_weight(w).rem_euclid(3) as usize;
    m.entries()
        .all(|x| x.is_zero() || x.as_monomial().is_some_and(|(d, _)| d == k))
}
