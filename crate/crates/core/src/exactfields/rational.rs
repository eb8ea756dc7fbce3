use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{impl_ring_ops, ArithError, Field, Ring};

/// Arbitrary-precision rational number in lowest terms with positive
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, ArithError> {
        let den = den.into();
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rat(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn as_bigrational(&self) -> &BigRational {
        &self.0
    }

    /// 3-adic valuation; `None` for zero.
    pub fn v3(&self) -> Option<i64> {
        if self.0.is_zero() {
            return None;
        }
        Some(v3_int(self.numer()) - v3_int(self.denom()))
    }

    /// Residue in `Z/3` of a 3-integral rational.
    pub fn mod3(&self) -> Result<u8, ArithError> {
        let d = mod3_int(self.denom());
        if d == 0 {
            return Err(ArithError::NotLambdaIntegral(self.v3().unwrap_or(0)));
        }
        let n = mod3_int(self.numer());
        // 1 and 2 are their own inverses mod 3
        Ok((n * d) % 3)
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }
}

pub(crate) fn v3_int(n: &BigInt) -> i64 {
    let three = BigInt::from(3);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && n.is_multiple_of(&three) {
        n /= &three;
        v += 1;
    }
    v
}

pub(crate) fn mod3_int(n: &BigInt) -> u8 {
    let r = n.mod_floor(&BigInt::from(3));
    if r.is_zero() {
        0
    } else if r.is_one() {
        1
    } else {
        2
    }
}

impl Ring for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn one() -> Self {
        Rat(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Rat(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rat(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rat(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Rat(-&self.0)
    }
    fn from_i64(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl Field for Rat {
    fn inv(&self) -> Result<Self, ArithError> {
        if self.0.is_zero() {
            Err(ArithError::DivisionByZero)
        } else {
            Ok(Rat(self.0.recip()))
        }
    }
}

impl_ring_ops!(Rat);

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for Rat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|e| format!("{e}"))?;
                let d: BigInt = d.trim().parse().map_err(|e| format!("{e}"))?;
                Rat::new(n, d).map_err(|e| e.to_string())
            }
            None => Ok(Rat::from_int(
                s.parse::<BigInt>().map_err(|e| format!("{e}"))?,
            )),
        }
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let x = Rat::new(6, -4).unwrap();
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(x, Rat::new(-3, 2).unwrap());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(Rat::new(1, 0), Err(ArithError::DivisionByZero));
        assert_eq!(Rat::zero().inv(), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn three_adic() {
        assert_eq!(Rat::new(18, 5).unwrap().v3(), Some(2));
        assert_eq!(Rat::new(2, 9).unwrap().v3(), Some(-2));
        assert_eq!(Rat::zero().v3(), None);
        assert_eq!(Rat::new(1, 2).unwrap().mod3().unwrap(), 2);
        assert_eq!(Rat::new(-1, 4).unwrap().mod3().unwrap(), 2);
        assert!(Rat::new(1, 3).unwrap().mod3().is_err());
    }

    #[test]
    fn parse_roundtrip() {
        let x: Rat = "-7/21".parse().unwrap();
        assert_eq!(x.to_string(), "-1/3");
    }
}
