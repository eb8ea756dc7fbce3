//! Local data at `λ = 1 − ω` (char 0) and `u = t³` (char 3).

use std::fmt;

use serde::{Serialize, Serializer};

use super::eisen::Eisen;
use super::gf3::Gf3;
use super::ratfunc::RatFuncGf3;
use super::{ArithError, Field, Ring};

/// Discrete valuation value; `Infinite` is the valuation of zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn at_least(self, n: i64) -> bool {
        self >= Valuation::Finite(n)
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("+inf"),
        }
    }
}

/// `(1 − ω)`-adic valuation on `Q(ω)`.
///
/// `(λ)` is the only prime above 3 and `N(λ) = 3`, so `ν_λ(x) = v₃(N(x))`.
pub fn lambda_valuation(x: &Eisen) -> Valuation {
    match x.norm().v3() {
        Some(v) => Valuation::Finite(v),
        None => Valuation::Infinite,
    }
}

/// Reduction `Z[ω]_(λ) → F₃`, `ω ↦ 1`.
///
/// The λ-integral elements of `Q(ω)` are exactly `c0 + c1·ω` with both
/// coordinates 3-integral, so denominators prime to 3 are inverted in `F₃`.
pub fn residue_lambda(x: &Eisen) -> Result<Gf3, ArithError> {
    if let Valuation::Finite(v) = lambda_valuation(x) {
        if v < 0 {
            return Err(ArithError::NotLambdaIntegral(v));
        }
    }
    let a = x.c0.mod3()?;
    let b = x.c1.mod3()?;
    Ok(Gf3::new((a + b) as i64))
}

fn check_in_fu(x: &RatFuncGf3) -> Result<(), ArithError> {
    x.num().check_u_poly().map_err(ArithError::NotInFu)?;
    x.den().check_u_poly().map_err(ArithError::NotInFu)?;
    Ok(())
}

/// `u`-adic valuation of an element of `F₃(u) ⊂ F₃(t)`.
pub fn u_valuation(x: &RatFuncGf3) -> Result<Valuation, ArithError> {
    check_in_fu(x)?;
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let on = x.num().order().expect("nonzero") as i64;
    let od = x.den().order().expect("nonzero") as i64;
    Ok(Valuation::Finite((on - od) / 3))
}

/// Constant term of the `u`-expansion of a `u`-integral element.
pub fn u_residue(x: &RatFuncGf3) -> Result<Gf3, ArithError> {
    match u_valuation(x)? {
        Valuation::Infinite => Ok(Gf3::ZERO),
        Valuation::Finite(v) if v < 0 => Err(ArithError::NotUIntegral(v)),
        Valuation::Finite(v) if v > 0 => Ok(Gf3::ZERO),
        Valuation::Finite(_) => x.num().coeff(0).div(&x.den().coeff(0)),
    }
}

pub fn u_valuation_and_residue(x: &RatFuncGf3) -> Result<(Valuation, Gf3), ArithError> {
    Ok((u_valuation(x)?, u_residue(x)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfields::PolyGf3;

    #[test]
    fn lambda_valuations() {
        assert_eq!(
            lambda_valuation(&Eisen::from_ints(3, 0)),
            Valuation::Finite(2)
        );
        assert_eq!(lambda_valuation(&Eisen::one()), Valuation::Finite(0));
        assert_eq!(lambda_valuation(&Eisen::zero()), Valuation::Infinite);
        let l = Eisen::lambda();
        let unit = Eisen::from_ints(-1, -1); // ω²
        let mut x = unit.clone();
        for _ in 0..5 {
            x = x.mul(&l);
        }
        assert_eq!(lambda_valuation(&x), Valuation::Finite(5));
        assert_eq!(
            lambda_valuation(&Eisen::from_frac(-1, -2, 3)),
            Valuation::Finite(-1)
        );
    }

    #[test]
    fn lambda_residues() {
        assert_eq!(residue_lambda(&Eisen::omega()).unwrap(), Gf3::ONE);
        assert_eq!(residue_lambda(&Eisen::from_ints(3, 0)).unwrap(), Gf3::ZERO);
        assert_eq!(residue_lambda(&Eisen::from_ints(2, 1)).unwrap(), Gf3::ZERO);
        // 1/2 ≡ 2
        assert_eq!(residue_lambda(&Eisen::from_frac(1, 0, 2)).unwrap(), Gf3::TWO);
        assert_eq!(
            residue_lambda(&Eisen::from_frac(1, 2, 3)),
            Err(ArithError::NotLambdaIntegral(-1))
        );
    }

    #[test]
    fn u_adic() {
        let u = RatFuncGf3::monomial(1, 3);
        assert_eq!(
            u_valuation_and_residue(&u).unwrap(),
            (Valuation::Finite(1), Gf3::ZERO)
        );
        let x = RatFuncGf3::from_poly(PolyGf3::from_coeffs([1, 0, 0, 0, 0, 0, 1]));
        assert_eq!(
            u_valuation_and_residue(&x).unwrap(),
            (Valuation::Finite(0), Gf3::ONE)
        );
        assert_eq!(
            u_valuation_and_residue(&RatFuncGf3::t()),
            Err(ArithError::NotInFu(1))
        );
        let y = RatFuncGf3::monomial(2, -3);
        assert_eq!(u_valuation(&y).unwrap(), Valuation::Finite(-1));
        assert_eq!(u_residue(&y), Err(ArithError::NotUIntegral(-1)));
    }
}
