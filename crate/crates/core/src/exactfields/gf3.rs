use std::fmt;

use serde::{Deserialize, Serialize};

use super::{impl_ring_ops, ArithError, Field, Ring};

/// Element of `F₃`, stored as `0`, `1` or `2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Gf3(u8);

impl Gf3 {
    pub const ZERO: Gf3 = Gf3(0);
    pub const ONE: Gf3 = Gf3(1);
    pub const TWO: Gf3 = Gf3(2);

    pub fn new(v: i64) -> Self {
        Gf3(v.rem_euclid(3) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl Ring for Gf3 {
    fn zero() -> Self {
        Gf3(0)
    }
    fn one() -> Self {
        Gf3(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        Gf3((self.0 + rhs.0) % 3)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Gf3((self.0 + 3 - rhs.0) % 3)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Gf3((self.0 * rhs.0) % 3)
    }
    fn neg(&self) -> Self {
        Gf3((3 - self.0) % 3)
    }
    fn from_i64(n: i64) -> Self {
        Gf3::new(n)
    }
}

impl Field for Gf3 {
    fn inv(&self) -> Result<Self, ArithError> {
        match self.0 {
            0 => Err(ArithError::DivisionByZero),
            v => Ok(Gf3(v)),
        }
    }
}

impl_ring_ops!(Gf3);

impl fmt::Display for Gf3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Gf3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
