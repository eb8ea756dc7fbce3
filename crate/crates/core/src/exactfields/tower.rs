use std::fmt;

use super::eisen::Eisen;
use super::{impl_ring_ops, ArithError, Field, Ring};

/// Element `e0 + e1·r + e2·r²` of `E = Q(ω)(r)` with `r³ = 1 − ω`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tower {
    pub e: [Eisen; 3],
}

impl Tower {
    pub fn new(e0: Eisen, e1: Eisen, e2: Eisen) -> Self {
        Tower { e: [e0, e1, e2] }
    }

    pub fn from_eisen(x: Eisen) -> Self {
        Tower::new(x, Eisen::zero(), Eisen::zero())
    }

    pub fn r() -> Self {
        Tower::new(Eisen::zero(), Eisen::one(), Eisen::zero())
    }

    /// `c · r^k` for `k ∈ {0, 1, 2}`.
    pub fn monomial(c: Eisen, k: usize) -> Self {
        assert!(k < 3, "r-degree must be reduced");
        let mut e = [Eisen::zero(), Eisen::zero(), Eisen::zero()];
        e[k] = c;
        Tower { e }
    }

    /// If `self = c·r^k` for a single `k`, returns `(k, c)`.
    pub fn as_monomial(&self) -> Option<(usize, &Eisen)> {
        let nz: Vec<usize> = (0..3).filter(|&i| !self.e[i].is_zero()).collect();
        match nz.as_slice() {
            [k] => Some((*k, &self.e[*k])),
            _ => None,
        }
    }

    /// Matrix of multiplication by `self` on the basis `1, r, r²`; column `j`
    /// holds the coordinates of `self · r^j`.
    pub fn multiplication_matrix(&self) -> [[Eisen; 3]; 3] {
        let l = Eisen::lambda();
        let [x0, x1, x2] = &self.e;
        let lx1 = l.mul(x1);
        let lx2 = l.mul(x2);
        [
            [x0.clone(), lx2.clone(), lx1],
            [x1.clone(), x0.clone(), lx2],
            [x2.clone(), x1.clone(), x0.clone()],
        ]
    }
}

/// Solves `m·y = rhs` over `Q(ω)` by Gaussian elimination.
fn solve3(mut m: [[Eisen; 3]; 3], mut rhs: [Eisen; 3]) -> Result<[Eisen; 3], ArithError> {
    for col in 0..3 {
        let piv = (col..3)
            .find(|&r| !m[r][col].is_zero())
            .ok_or(ArithError::DivisionByZero)?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        let inv = m[col][col].inv()?;
        for c in col..3 {
            m[col][c] = m[col][c].mul(&inv);
        }
        rhs[col] = rhs[col].mul(&inv);
        for r in 0..3 {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..3 {
                    let v = m[col][c].mul(&f);
                    m[r][c] = m[r][c].sub(&v);
                }
                let v = rhs[col].mul(&f);
                rhs[r] = rhs[r].sub(&v);
            }
        }
    }
    Ok(rhs)
}

impl Ring for Tower {
    fn zero() -> Self {
        Tower::from_eisen(Eisen::zero())
    }
    fn one() -> Self {
        Tower::from_eisen(Eisen::one())
    }
    fn is_zero(&self) -> bool {
        self.e.iter().all(Eisen::is_zero)
    }
    fn add(&self, rhs: &Self) -> Self {
        Tower::new(
            self.e[0].add(&rhs.e[0]),
            self.e[1].add(&rhs.e[1]),
            self.e[2].add(&rhs.e[2]),
        )
    }
    fn sub(&self, rhs: &Self) -> Self {
        Tower::new(
            self.e[0].sub(&rhs.e[0]),
            self.e[1].sub(&rhs.e[1]),
            self.e[2].sub(&rhs.e[2]),
        )
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut p: [Eisen; 5] = std::array::from_fn(|_| Eisen::zero());
        for i in 0..3 {
            if self.e[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                if rhs.e[j].is_zero() {
                    continue;
                }
                p[i + j] = p[i + j].add(&self.e[i].mul(&rhs.e[j]));
            }
        }
        // r³ = λ, r⁴ = λ·r
        let l = Eisen::lambda();
        let [p0, p1, p2, p3, p4] = p;
        Tower::new(p0.add(&l.mul(&p3)), p1.add(&l.mul(&p4)), p2)
    }
    fn neg(&self) -> Self {
        Tower::new(self.e[0].neg(), self.e[1].neg(), self.e[2].neg())
    }
    fn from_i64(n: i64) -> Self {
        Tower::from_eisen(Eisen::from_ints(n, 0))
    }
}

impl Field for Tower {
    fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if let Some((0, c)) = self.as_monomial() {
            return Ok(Tower::from_eisen(c.inv()?));
        }
        let y = solve3(
            self.multiplication_matrix(),
            [Eisen::one(), Eisen::zero(), Eisen::zero()],
        )?;
        let [y0, y1, y2] = y;
        Ok(Tower::new(y0, y1, y2))
    }
}

impl_ring_ops!(Tower);

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.e.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = c.to_string();
            let needs_parens = body.contains(' ') || body.contains('/');
            let c_str = if k > 0 && needs_parens {
                format!("({body})")
            } else if k > 0 && body == "1" {
                String::new()
            } else if k > 0 && body == "-1" {
                "-".into()
            } else {
                body
            };
            parts.push(match k {
                0 => c_str,
                1 => format!("{c_str}r"),
                _ => format!("{c_str}r²"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_cubed_is_lambda() {
        let r = Tower::r();
        let r2 = &r * &r;
        assert_eq!(&r * &r2, Tower::from_eisen(Eisen::from_ints(1, -1)));
    }

    #[test]
    fn inverse_of_r() {
        let r = Tower::r();
        let ri = r.inv().unwrap();
        assert!((&r * &ri).is_one());
        // r⁻¹ = r² / λ
        let expected = Tower::monomial(Eisen::lambda().inv().unwrap(), 2);
        assert_eq!(ri, expected);
    }

    #[test]
    fn inverse_generic() {
        let x = Tower::new(
            Eisen::from_frac(1, 2, 3),
            Eisen::from_ints(-4, 1),
            Eisen::from_ints(0, 7),
        );
        assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(Tower::zero().inv(), Err(ArithError::DivisionByZero));
    }
}
