use std::fmt;

use super::gf3::Gf3;
use super::poly::PolyGf3;
use super::{impl_ring_ops, ArithError, Field, Ring};

/// Rational function `num / den` over `F₃` in lowest terms with monic
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFuncGf3 {
    num: PolyGf3,
    den: PolyGf3,
}

impl RatFuncGf3 {
    pub fn new(num: PolyGf3, den: PolyGf3) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFuncGf3::zero());
        }
        let g = num.gcd(&den);
        let (mut num, _) = num.div_rem(&g)?;
        let (mut den, _) = den.div_rem(&g)?;
        let lc = den.leading().inv()?;
        num = num.scale(lc);
        den = den.scale(lc);
        Ok(RatFuncGf3 { num, den })
    }

    pub fn from_poly(p: PolyGf3) -> Self {
        RatFuncGf3 {
            num: p,
            den: PolyGf3::one(),
        }
    }

    /// `c · t^e` for any integer `e`.
    pub fn monomial(c: i64, e: i64) -> Self {
        let c = Gf3::new(c);
        if e >= 0 {
            RatFuncGf3::from_poly(PolyGf3::monomial(c, e as usize))
        } else {
            RatFuncGf3::new(
                PolyGf3::constant(c),
                PolyGf3::monomial(Gf3::ONE, (-e) as usize),
            )
            .expect("nonzero denominator")
        }
    }

    pub fn t() -> Self {
        RatFuncGf3::monomial(1, 1)
    }

    pub fn num(&self) -> &PolyGf3 {
        &self.num
    }

    pub fn den(&self) -> &PolyGf3 {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Constant in `F₃`, if `self` is one.
    pub fn as_constant(&self) -> Option<Gf3> {
        if self.den.is_one() && self.num.degree().map_or(true, |d| d == 0) {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }
}

impl Ring for RatFuncGf3 {
    fn zero() -> Self {
        RatFuncGf3 {
            num: PolyGf3::zero(),
            den: PolyGf3::one(),
        }
    }
    fn one() -> Self {
        RatFuncGf3::from_poly(PolyGf3::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return RatFuncGf3::new(self.num.add(&rhs.num), self.den.clone())
                .expect("nonzero denominator");
        }
        RatFuncGf3::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
        .expect("nonzero denominator")
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return RatFuncGf3::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFuncGf3::from_poly(self.num.mul(&rhs.num));
        }
        RatFuncGf3::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
            .expect("nonzero denominator")
    }
    fn neg(&self) -> Self {
        RatFuncGf3 {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn from_i64(n: i64) -> Self {
        RatFuncGf3::from_poly(PolyGf3::from_i64(n))
    }
}

impl Field for RatFuncGf3 {
    fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        RatFuncGf3::new(self.den.clone(), self.num.clone())
    }
}

impl_ring_ops!(RatFuncGf3);

impl fmt::Display for RatFuncGf3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFuncGf3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_with_monic_denominator() {
        // (2t² + 2t) / (2t) = t + 1
        let x = RatFuncGf3::new(
            PolyGf3::from_coeffs([0, 2, 2]),
            PolyGf3::from_coeffs([0, 2]),
        )
        .unwrap();
        assert_eq!(x, RatFuncGf3::from_poly(PolyGf3::from_coeffs([1, 1])));
        let y = RatFuncGf3::new(PolyGf3::one(), PolyGf3::from_coeffs([0, 2])).unwrap();
        assert_eq!(y.den(), &PolyGf3::from_coeffs([0, 1]));
        assert_eq!(y.num(), &PolyGf3::from_coeffs([2]));
    }

    #[test]
    fn zero_normalizes_denominator() {
        let z = RatFuncGf3::new(PolyGf3::zero(), PolyGf3::from_coeffs([1, 1])).unwrap();
        assert_eq!(z, RatFuncGf3::zero());
        assert!(z.den().is_one());
    }

    #[test]
    fn monomials_and_inverse() {
        let x = RatFuncGf3::monomial(2, -2);
        assert!((&x * &RatFuncGf3::monomial(2, 2)).is_one());
        assert_eq!(x.inv().unwrap(), RatFuncGf3::monomial(2, 2));
        assert_eq!(RatFuncGf3::zero().inv(), Err(ArithError::DivisionByZero));
    }
}
