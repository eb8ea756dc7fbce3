//! Exact scalar arithmetic.
//!
//! Every scalar the matrix layer touches lives in one of the domains below:
//!
//! * [`Rat`]: arbitrary-precision rationals,
//! * [`Eisen`]: `Q(ω)` with `ω² + ω + 1 = 0`,
//! * [`Tower`]: `E = Q(ω)[r] / (r³ − (1 − ω))`, a degree-6 field over `Q`,
//! * [`Gf3`]: the prime field with three elements,
//! * [`PolyGf3`] and [`RatFuncGf3`]: `F₃[t]` and `F₃(t)`.
//!
//! The module also carries the local machinery at the two primes that matter,
//! `λ = 1 − ω` in `Q(ω)` and `u = t³` in `F₃(t)`.

mod eisen;
mod gf3;
mod poly;
mod rational;
mod ratfunc;
mod tower;
mod valuation;

pub use eisen::{eisen_gcd, Eisen};
pub use gf3::Gf3;
pub use poly::PolyGf3;
pub use rational::Rat;
pub use ratfunc::RatFuncGf3;
pub use tower::Tower;
pub use valuation::{
    lambda_valuation, residue_lambda, u_residue, u_valuation, u_valuation_and_residue, Valuation,
};

use std::fmt;
use std::hash::Hash;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not λ-integral: valuation {0}")]
    NotLambdaIntegral(i64),
    #[error("not in F₃(u): exponent {0} is not a multiple of 3")]
    NotInFu(usize),
    #[error("not u-integral: valuation {0}")]
    NotUIntegral(i64),
    #[error("not an Eisenstein integer: {0}")]
    NotIntegral(String),
}

/// Commutative ring with unit. Elements are always kept in canonical form, so
/// structural equality is mathematical equality.
pub trait Ring:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_i64(n: i64) -> Self {
        let mut acc = Self::zero();
        let one = if n < 0 { Self::one().neg() } else { Self::one() };
        for _ in 0..n.unsigned_abs() {
            acc = acc.add(&one);
        }
        acc
    }
}

pub trait Field: Ring {
    fn inv(&self) -> Result<Self, ArithError>;

    fn div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(&rhs.inv()?))
    }
}

/// Forwards `std::ops` arithmetic to the [`Ring`] methods so concrete scalar
/// types can be used with infix operators.
macro_rules! impl_ring_ops {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                $crate::exactfields::Ring::add(&self, &rhs)
            }
        }
        impl<'a> std::ops::Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, rhs: &'a $t) -> $t {
                $crate::exactfields::Ring::add(self, rhs)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                $crate::exactfields::Ring::sub(&self, &rhs)
            }
        }
        impl<'a> std::ops::Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, rhs: &'a $t) -> $t {
                $crate::exactfields::Ring::sub(self, rhs)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                $crate::exactfields::Ring::mul(&self, &rhs)
            }
        }
        impl<'a> std::ops::Mul<&'a $t> for &'a $t {
            type Output = $t;
            fn mul(self, rhs: &'a $t) -> $t {
                $crate::exactfields::Ring::mul(self, rhs)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::exactfields::Ring::neg(&self)
            }
        }
        impl<'a> std::ops::Neg for &'a $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::exactfields::Ring::neg(self)
            }
        }
    };
}
pub(crate) use impl_ring_ops;
