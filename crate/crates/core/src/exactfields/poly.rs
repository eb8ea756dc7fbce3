use std::fmt;

use super::gf3::Gf3;
use super::{impl_ring_ops, ArithError, Field, Ring};

/// Polynomial over `F₃`; `coeffs[i]` is the coefficient of `t^i`. Trailing zeros
/// are stripped, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PolyGf3 {
    coeffs: Vec<u8>,
}

impl PolyGf3 {
    pub fn from_coeffs(coeffs: impl IntoIterator<Item = i64>) -> Self {
        let mut p = PolyGf3 {
            coeffs: coeffs.into_iter().map(|c| c.rem_euclid(3) as u8).collect(),
        };
        p.trim();
        p
    }

    pub fn constant(c: Gf3) -> Self {
        PolyGf3::monomial(c, 0)
    }

    pub fn monomial(c: Gf3, exp: usize) -> Self {
        if c.is_zero() {
            return PolyGf3::default();
        }
        let mut coeffs = vec![0; exp + 1];
        coeffs[exp] = c.value();
        PolyGf3 { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Gf3 {
        Gf3::new(self.coeffs.get(i).copied().unwrap_or(0) as i64)
    }

    pub fn leading(&self) -> Gf3 {
        self.coeffs
            .last()
            .map_or(Gf3::ZERO, |&c| Gf3::new(c as i64))
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
    }

    /// Lowest exponent with a nonzero coefficient; `None` for zero.
    pub fn order(&self) -> Option<usize> {
        self.support().next()
    }

    pub fn scale(&self, c: Gf3) -> Self {
        PolyGf3::from_coeffs(self.coeffs.iter().map(|&x| (x * c.value()) as i64))
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        PolyGf3 { coeffs }
    }

    pub fn monic(&self) -> Self {
        match self.leading().inv() {
            Ok(inv) => self.scale(inv),
            Err(_) => self.clone(),
        }
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), ArithError> {
        let dd = d.degree().ok_or(ArithError::DivisionByZero)?;
        let lead_inv = d.leading().inv()?.value();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((PolyGf3::default(), self.clone()));
        }
        let mut quot = vec![0u8; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = (rem[k + dd] * lead_inv) % 3;
            if c == 0 {
                continue;
            }
            quot[k] = c;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                rem[k + i] = (rem[k + i] + 3 * 3 - c * dc) % 3;
            }
        }
        let mut q = PolyGf3 { coeffs: quot };
        q.trim();
        let mut r = PolyGf3 { coeffs: rem };
        r.trim();
        Ok((q, r))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Whether every exponent is a multiple of 3, i.e. the polynomial lies in
    /// `F₃[u]` with `u = t³`. Returns the first offending exponent otherwise.
    pub fn check_u_poly(&self) -> Result<(), usize> {
        match self.support().find(|e| e % 3 != 0) {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    /// Rewrites `Σ c_k t^{3k}` as `Σ c_k u^k`. Fails on exponents not divisible
    /// by 3.
    pub fn compress_to_u(&self) -> Result<Self, ArithError> {
        self.check_u_poly().map_err(ArithError::NotInFu)?;
        Ok(PolyGf3::from_coeffs(
            self.coeffs.iter().step_by(3).map(|&c| c as i64),
        ))
    }

    /// Inverse of [`compress_to_u`](Self::compress_to_u).
    pub fn expand_from_u(&self) -> Self {
        let mut coeffs = vec![0u8; self.coeffs.len().saturating_sub(1) * 3 + 1];
        if self.is_zero() {
            return PolyGf3::default();
        }
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[3 * k] = c;
        }
        PolyGf3 { coeffs }
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            parts.push(match (c, e) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        parts.join(" + ")
    }
}

impl Ring for PolyGf3 {
    fn zero() -> Self {
        PolyGf3::default()
    }
    fn one() -> Self {
        PolyGf3 { coeffs: vec![1] }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = rhs.coeffs.get(i).copied().unwrap_or(0);
            coeffs.push((a + b) % 3);
        }
        let mut p = PolyGf3 { coeffs };
        p.trim();
        p
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return PolyGf3::default();
        }
        let mut acc = vec![0u32; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                acc[i + j] += (a * b) as u32;
            }
        }
        let mut p = PolyGf3 {
            coeffs: acc.into_iter().map(|c| (c % 3) as u8).collect(),
        };
        p.trim();
        p
    }
    fn neg(&self) -> Self {
        PolyGf3 {
            coeffs: self.coeffs.iter().map(|&c| (3 - c) % 3).collect(),
        }
    }
    fn from_i64(n: i64) -> Self {
        PolyGf3::constant(Gf3::new(n))
    }
}

impl_ring_ops!(PolyGf3);

impl fmt::Display for PolyGf3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("t"))
    }
}

impl fmt::Debug for PolyGf3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_with_remainder() {
        // t³ + 2t + 1 = (t + 1)(t² + 2t) + 1
        let a = PolyGf3::from_coeffs([1, 2, 0, 1]);
        let d = PolyGf3::from_coeffs([1, 1]);
        let (q, r) = a.div_rem(&d).unwrap();
        assert_eq!(q, PolyGf3::from_coeffs([0, 2, 1]));
        assert_eq!(r, PolyGf3::from_coeffs([1]));
        assert_eq!(&(&q * &d) + &r, a);
    }

    #[test]
    fn gcd_is_monic() {
        let x = PolyGf3::from_coeffs([1, 1]);
        let a = &x * &PolyGf3::from_coeffs([2, 0, 1]);
        let b = (&x * &PolyGf3::from_coeffs([0, 2])).scale(Gf3::TWO);
        assert_eq!(a.gcd(&b), x);
    }

    #[test]
    fn u_compression() {
        let p = PolyGf3::from_coeffs([1, 0, 0, 0, 0, 0, 2]);
        let u = p.compress_to_u().unwrap();
        assert_eq!(u, PolyGf3::from_coeffs([1, 0, 2]));
        assert_eq!(u.expand_from_u(), p);
        assert_eq!(
            PolyGf3::from_coeffs([0, 1]).compress_to_u(),
            Err(ArithError::NotInFu(1))
        );
    }

    #[test]
    fn display() {
        assert_eq!(PolyGf3::from_coeffs([1, 0, 2]).to_string(), "2t^2 + 1");
        assert_eq!(PolyGf3::zero().to_string(), "0");
    }
}
