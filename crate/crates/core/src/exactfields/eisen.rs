use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::rational::Rat;
use super::{impl_ring_ops, ArithError, Field, Ring};

/// Element `c0 + c1·ω` of `Q(ω)`, reduced with `ω² = −ω − 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Eisen {
    pub c0: Rat,
    pub c1: Rat,
}

impl Eisen {
    pub fn new(c0: Rat, c1: Rat) -> Self {
        Eisen { c0, c1 }
    }

    pub fn from_ints(c0: i64, c1: i64) -> Self {
        Eisen::new(Rat::from_int(c0), Rat::from_int(c1))
    }

    /// `(c0 + c1·ω) / den`.
    pub fn from_frac(c0: i64, c1: i64, den: i64) -> Self {
        let d = Rat::from_int(den).inv().expect("nonzero denominator");
        Eisen::new(Rat::from_int(c0).mul(&d), Rat::from_int(c1).mul(&d))
    }

    pub fn from_rat(c0: Rat) -> Self {
        Eisen::new(c0, Rat::zero())
    }

    pub fn omega() -> Self {
        Eisen::from_ints(0, 1)
    }

    /// The prime `λ = 1 − ω` above 3.
    pub fn lambda() -> Self {
        Eisen::from_ints(1, -1)
    }

    /// Galois conjugate `ω ↦ ω²`.
    pub fn conj(&self) -> Self {
        Eisen::new(self.c0.sub(&self.c1), self.c1.neg())
    }

    /// Field norm `c0² − c0·c1 + c1²`.
    pub fn norm(&self) -> Rat {
        self.c0
            .mul(&self.c0)
            .sub(&self.c0.mul(&self.c1))
            .add(&self.c1.mul(&self.c1))
    }

    pub fn is_integral(&self) -> bool {
        self.c0.is_integer() && self.c1.is_integer()
    }

    pub fn is_rational(&self) -> bool {
        self.c1.is_zero()
    }

    /// Least common multiple of the denominators of both coordinates.
    pub fn denominator_lcm(&self) -> BigInt {
        self.c0.denom().lcm(self.c1.denom())
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        let k = Rat::from_int(k.clone());
        Eisen::new(self.c0.mul(&k), self.c1.mul(&k))
    }

    /// Units of `Z[ω]` are `±ω^k`.
    pub fn is_unit_integer(&self) -> bool {
        self.is_integral() && self.norm().is_one()
    }

    /// Nearest Eisenstein integer in the norm sense.
    pub(crate) fn round(&self) -> Eisen {
        let f0 = floor_rat(&self.c0);
        let f1 = floor_rat(&self.c1);
        let mut best: Option<(Rat, Eisen)> = None;
        for d0 in 0..2i64 {
            for d1 in 0..2i64 {
                let cand = Eisen::new(
                    Rat::from_int(&f0 + BigInt::from(d0)),
                    Rat::from_int(&f1 + BigInt::from(d1)),
                );
                let n = self.sub(&cand).norm();
                if best.as_ref().map_or(true, |(bn, _)| n < *bn) {
                    best = Some((n, cand));
                }
            }
        }
        best.expect("four candidates").1
    }
}

fn floor_rat(x: &Rat) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// Euclidean gcd in `Z[ω]`. Inputs must be Eisenstein integers; the result is
/// determined up to a unit.
pub fn eisen_gcd(x: &Eisen, y: &Eisen) -> Result<Eisen, ArithError> {
    for v in [x, y] {
        if !v.is_integral() {
            return Err(ArithError::NotIntegral(v.to_string()));
        }
    }
    let (mut a, mut b) = (x.clone(), y.clone());
    while !b.is_zero() {
        let q = a.div(&b)?.round();
        let r = a.sub(&q.mul(&b));
        a = b;
        b = r;
    }
    Ok(a)
}

impl Ring for Eisen {
    fn zero() -> Self {
        Eisen::new(Rat::zero(), Rat::zero())
    }
    fn one() -> Self {
        Eisen::new(Rat::one(), Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Eisen::new(self.c0.add(&rhs.c0), self.c1.add(&rhs.c1))
    }
    fn sub(&self, rhs: &Self) -> Self {
        Eisen::new(self.c0.sub(&rhs.c0), self.c1.sub(&rhs.c1))
    }
    fn mul(&self, rhs: &Self) -> Self {
        // (a + bω)(c + dω) = ac − bd + (ad + bc − bd)ω
        let ac = self.c0.mul(&rhs.c0);
        let bd = self.c1.mul(&rhs.c1);
        let ad = self.c0.mul(&rhs.c1);
        let bc = self.c1.mul(&rhs.c0);
        Eisen::new(ac.sub(&bd), ad.add(&bc).sub(&bd))
    }
    fn neg(&self) -> Self {
        Eisen::new(self.c0.neg(), self.c1.neg())
    }
    fn from_i64(n: i64) -> Self {
        Eisen::from_ints(n, 0)
    }
}

impl Field for Eisen {
    fn inv(&self) -> Result<Self, ArithError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let ni = n.inv()?;
        let c = self.conj();
        Ok(Eisen::new(c.c0.mul(&ni), c.c1.mul(&ni)))
    }
}

impl_ring_ops!(Eisen);

impl fmt::Display for Eisen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c0.is_zero(), self.c1.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.c0),
            (true, false) => write!(f, "{}ω", coeff(&self.c1)),
            (false, false) => {
                if self.c1.numer().is_negative() {
                    write!(f, "{} - {}ω", self.c0, coeff(&self.c1.neg()))
                } else {
                    write!(f, "{} + {}ω", self.c0, coeff(&self.c1))
                }
            }
        }
    }
}

fn coeff(c: &Rat) -> String {
    if c.is_one() {
        String::new()
    } else if *c == Rat::from_int(-1) {
        "-".into()
    } else if c.is_integer() {
        c.to_string()
    } else {
        format!("({c})")
    }
}

impl fmt::Debug for Eisen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_one_plus_omega() {
        let x = Eisen::from_ints(1, 1);
        assert_eq!(x.inv().unwrap(), Eisen::from_ints(0, -1));
        // hand expansion: (1+ω)(−ω) = −ω − ω² = −ω + ω + 1 = 1
        assert!((x.clone() * Eisen::from_ints(0, -1)).is_one());
    }

    #[test]
    fn omega_is_a_cube_root_of_unity() {
        let w = Eisen::omega();
        let w2 = &w * &w;
        assert_eq!(w2, Eisen::from_ints(-1, -1));
        assert!((&w2 * &w).is_one());
        assert!((Eisen::one() + w + w2).is_zero());
    }

    #[test]
    fn three_is_minus_omega_squared_lambda_squared() {
        let l = Eisen::lambda();
        let w = Eisen::omega();
        let rhs = (&w * &w).neg() * (&l * &l);
        assert_eq!(rhs, Eisen::from_ints(3, 0));
    }

    #[test]
    fn gcd_of_associates() {
        let l = Eisen::lambda();
        let three = Eisen::from_ints(3, 0);
        let g = eisen_gcd(&three, &(&l * &Eisen::from_ints(2, 5))).unwrap();
        // 2 + 5ω has norm 4 − 10 + 25 = 19, coprime to 3
        assert_eq!(g.norm(), Rat::from_int(3));
        assert!(eisen_gcd(&Eisen::from_frac(1, 0, 2), &three).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Eisen::from_frac(-1, -2, 3).to_string(), "-1/3 - (2/3)ω");
        assert_eq!(Eisen::from_ints(0, -1).to_string(), "-ω");
    }
}
