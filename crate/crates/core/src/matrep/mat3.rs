use std::fmt;

use serde::{Serialize, Serializer};

use crate::exactfields::{ArithError, Field, Ring};

/// 3×3 matrix over a commutative ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat3<R> {
    pub m: [[R; 3]; 3],
}

impl<R: Ring> Mat3<R> {
    pub fn new(m: [[R; 3]; 3]) -> Self {
        Mat3 { m }
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> R) -> Self {
        Mat3 {
            m: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn identity() -> Self {
        Mat3::from_fn(|i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn zero() -> Self {
        Mat3::from_fn(|_, _| R::zero())
    }

    pub fn scalar(c: &R) -> Self {
        Mat3::from_fn(|i, j| if i == j { c.clone() } else { R::zero() })
    }

    /// Elementary matrix `E_ij(x) = I + x·e_ij` (0-based indices, `i ≠ j`).
    pub fn elementary(i: usize, j: usize, x: R) -> Self {
        assert!(i != j && i < 3 && j < 3, "elementary matrix needs i ≠ j");
        let mut e = Mat3::identity();
        e.m[i][j] = x;
        e
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.m[i][j]
    }

    pub fn entries(&self) -> impl Iterator<Item = &R> {
        self.m.iter().flatten()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Mat3<S> {
        Mat3::from_fn(|i, j| f(&self.m[i][j]))
    }

    pub fn try_map<S: Ring, E>(&self, f: impl Fn(&R) -> Result<S, E>) -> Result<Mat3<S>, E> {
        let mut out = Mat3::<S>::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.m[i][j] = f(&self.m[i][j])?;
            }
        }
        Ok(out)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat3::from_fn(|i, j| {
            let mut acc = R::zero();
            for k in 0..3 {
                if !self.m[i][k].is_zero() && !o.m[k][j].is_zero() {
                    acc = acc.add(&self.m[i][k].mul(&o.m[k][j]));
                }
            }
            acc
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        Mat3::from_fn(|i, j| self.m[i][j].add(&o.m[i][j]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Mat3::from_fn(|i, j| self.m[i][j].sub(&o.m[i][j]))
    }

    pub fn scale(&self, c: &R) -> Self {
        Mat3::from_fn(|i, j| self.m[i][j].mul(c))
    }

    pub fn neg(&self) -> Self {
        Mat3::from_fn(|i, j| self.m[i][j].neg())
    }

    pub fn transpose(&self) -> Self {
        Mat3::from_fn(|i, j| self.m[j][i].clone())
    }

    pub fn trace(&self) -> R {
        self.m[0][0].add(&self.m[1][1]).add(&self.m[2][2])
    }

    fn minor(&self, i: usize, j: usize) -> R {
        let r: Vec<usize> = (0..3).filter(|&x| x != i).collect();
        let c: Vec<usize> = (0..3).filter(|&x| x != j).collect();
        self.m[r[0]][c[0]]
            .mul(&self.m[r[1]][c[1]])
            .sub(&self.m[r[0]][c[1]].mul(&self.m[r[1]][c[0]]))
    }

    pub fn det(&self) -> R {
        (0..3).fold(R::zero(), |acc, j| {
            let t = self.m[0][j].mul(&self.minor(0, j));
            if j % 2 == 0 {
                acc.add(&t)
            } else {
                acc.sub(&t)
            }
        })
    }

    /// Classical adjugate; `M·adj(M) = det(M)·I`.
    pub fn adjugate(&self) -> Self {
        Mat3::from_fn(|i, j| {
            let c = self.minor(j, i);
            if (i + j) % 2 == 0 {
                c
            } else {
                c.neg()
            }
        })
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat3::identity()
    }

    /// `Some(c)` if the matrix is `c·I`.
    pub fn scalar_value(&self) -> Option<R> {
        let c = &self.m[0][0];
        let ok = (0..3).all(|i| (0..3).all(|j| if i == j { self.m[i][j] == *c } else { self.m[i][j].is_zero() }));
        ok.then(|| c.clone())
    }

    /// `[x, y] = x y x⁻¹ y⁻¹`, given the inverses.
    pub fn commutator(x: &Self, xi: &Self, y: &Self, yi: &Self) -> Self {
        x.mul(y).mul(xi).mul(yi)
    }

    pub fn pow(&self, e: u64) -> Self {
        (0..e).fold(Mat3::identity(), |acc, _| acc.mul(self))
    }
}

impl<F: Field> Mat3<F> {
    pub fn inverse(&self) -> Result<Self, ArithError> {
        let d = self.det().inv()?;
        Ok(self.adjugate().scale(&d))
    }

    /// Projective canonical form: the first nonzero entry (row-major) is 1.
    pub fn projective(&self) -> ProjMat3<F> {
        match self.entries().find(|x| !x.is_zero()) {
            None => ProjMat3(self.clone()),
            Some(lead) => {
                let inv = lead.inv().expect("nonzero");
                ProjMat3(self.scale(&inv))
            }
        }
    }
}

impl<R: Ring> fmt::Display for Mat3<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| {
                let e: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("[{}]", e.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl<R: Ring> fmt::Debug for Mat3<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: Ring> Serialize for Mat3<R> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .m
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}

/// Matrix in projective canonical form (first nonzero entry equal to 1).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct ProjMat3<F: Field>(pub Mat3<F>);

impl<F: Field> ProjMat3<F> {
    pub fn mat(&self) -> &Mat3<F> {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.0.mul(&o.0).projective()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfields::{Gf3, Rat};

    fn q(rows: [[i64; 3]; 3]) -> Mat3<Rat> {
        Mat3::from_fn(|i, j| Rat::from_int(rows[i][j]))
    }

    #[test]
    fn det_and_inverse() {
        let m = q([[2, 1, 0], [0, 1, 3], [1, 0, 1]]);
        assert_eq!(m.det(), Rat::from_int(5));
        assert!(m.mul(&m.inverse().unwrap()).is_identity());
        assert_eq!(m.mul(&m.adjugate()), Mat3::scalar(&m.det()));
    }

    #[test]
    fn projective_form() {
        let m = q([[0, 2, 4], [2, 0, 0], [0, 0, 2]]);
        let p = m.projective();
        assert_eq!(*p.mat().get(0, 1), Rat::from_int(1));
        assert_eq!(p, m.scale(&Rat::from_int(-7)).projective());
    }

    #[test]
    fn steinberg_over_gf3() {
        let x = Mat3::elementary(0, 1, Gf3::ONE);
        let y = Mat3::elementary(1, 2, Gf3::TWO);
        let c = Mat3::commutator(
            &x,
            &Mat3::elementary(0, 1, Gf3::TWO),
            &y,
            &Mat3::elementary(1, 2, Gf3::ONE),
        );
        assert_eq!(c, Mat3::elementary(0, 2, Gf3::TWO));
    }
}
