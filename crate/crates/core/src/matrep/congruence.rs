//! Level-0 and level-1 reductions at `λ = 1 − ω` and at `u = t³`, finite
//! images in `SL₃(F₃)`, and the level-1 Lie algebra spans.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::mat3::Mat3;
use super::MatrepError;
use crate::exactfields::{
    lambda_valuation, residue_lambda, u_residue, u_valuation, Eisen, Field, Gf3, RatFuncGf3, Ring,
};
use crate::fpgroup::{reidemeister_schreier, Word};
use crate::polymap::FiniteGroup;

/// Entrywise reduction mod `λ` of a determinant-1 matrix over `Z[ω]`.
pub fn level0_char0(m: &Mat3<Eisen>) -> Result<Mat3<Gf3>, MatrepError> {
    let r = m.try_map(residue_lambda)?;
    // a det −1 representative is the same projective element
    if r.det() == Gf3::TWO {
        Ok(r.neg())
    } else {
        Ok(r)
    }
}

/// Entrywise reduction mod `u` of a matrix over `F₃[u]`.
pub fn level0_char3(m: &Mat3<RatFuncGf3>) -> Result<Mat3<Gf3>, MatrepError> {
    Ok(m.try_map(u_residue)?)
}

fn check_trace(x: &Mat3<Gf3>) -> Result<(), MatrepError> {
    if x.trace().is_zero() {
        Ok(())
    } else {
        Err(MatrepError::Level(format!("level-1 log {x} has nonzero trace")))
    }
}

/// `X = (M − I)/λ mod λ` for `M ≡ I mod λ`. Defined modulo the scalar line,
/// since `M` is only determined up to `ω`.
pub fn level1_log_char0(m: &Mat3<Eisen>) -> Result<Mat3<Gf3>, MatrepError> {
    if !level0_char0(m)?.is_identity() {
        return Err(MatrepError::Level("matrix is not ≡ I mod λ".into()));
    }
    let lam_inv = Eisen::lambda().inv()?;
    let d = m.sub(&Mat3::identity()).scale(&lam_inv);
    for x in d.entries() {
        let v = lambda_valuation(x);
        if !v.at_least(0) {
            return Err(MatrepError::Level(format!("entry {x} of (M − I)/λ has λ-valuation {v}")));
        }
    }
    let x = d.try_map(residue_lambda)?;
    check_trace(&x)?;
    Ok(x)
}

/// `X = (M − I)/u mod u` for `M ≡ I mod u`.
pub fn level1_log_char3(m: &Mat3<RatFuncGf3>) -> Result<Mat3<Gf3>, MatrepError> {
    let d = m.sub(&Mat3::identity());
    for x in d.entries() {
        let v = u_valuation(x)?;
        if !v.at_least(1) {
            return Err(MatrepError::Level(format!("entry {x} of M − I has u-valuation {v}")));
        }
    }
    let u_inv = RatFuncGf3::monomial(1, -3);
    let x = d.scale(&u_inv).try_map(u_residue)?;
    check_trace(&x)?;
    Ok(x)
}

/// Closure of `gens` under multiplication, in breadth-first order from `I`.
pub fn finite_image_subgroup(
    gens: &[Mat3<Gf3>],
    limit: usize,
) -> Result<Vec<Mat3<Gf3>>, MatrepError> {
    let mut elems = vec![Mat3::identity()];
    let mut seen: HashMap<Mat3<Gf3>, usize> = HashMap::from([(Mat3::identity(), 0)]);
    let mut k = 0;
    while k < elems.len() {
        for g in gens {
            let p = elems[k].mul(g);
            if !seen.contains_key(&p) {
                if elems.len() >= limit {
                    return Err(MatrepError::Guard {
                        needed: elems.len() as u128 + 1,
                        limit: limit as u128,
                    });
                }
                seen.insert(p.clone(), elems.len());
                elems.push(p);
            }
        }
        k += 1;
    }
    Ok(elems)
}

/// The 27 upper unitriangular matrices over `F₃`.
pub fn standard_unitriangular() -> Vec<Mat3<Gf3>> {
    let mut out = Vec::with_capacity(27);
    for x in 0..3 {
        for y in 0..3 {
            for z in 0..3 {
                let mut m = Mat3::identity();
                m.m[0][1] = Gf3::new(x);
                m.m[0][2] = Gf3::new(y);
                m.m[1][2] = Gf3::new(z);
                out.push(m);
            }
        }
    }
    out
}

/// Permutation matrix sending `e_j` to `e_{p[j]}`.
pub fn permutation_matrix(p: [usize; 3]) -> Mat3<Gf3> {
    Mat3::from_fn(|i, j| if p[j] == i { Gf3::ONE } else { Gf3::ZERO })
}

/// `|SL₃(F₃)| = |GL₃(F₃)| / (q − 1)` with `q = 3`; equal to `|PSL₃(F₃)|`
/// because `gcd(3, q − 1) = 1`.
pub fn sl3_f3_order() -> u64 {
    let q: u64 = 3;
    let gl = (q.pow(3) - 1) * (q.pow(3) - q) * (q.pow(3) - q * q);
    gl / (q - 1)
}

/// Index in the level-0 group implied by a level-0 image of order
/// `level0_order` and a level-1 image of dimension `level1_dim` inside an
/// ambient of dimension `ambient_dim`, assuming full level-2 containment.
pub fn index_reconstruction(
    level0_order: u64,
    level1_dim: usize,
    ambient_dim: usize,
) -> Result<u64, MatrepError> {
    let total = sl3_f3_order();
    if level0_order == 0 || total % level0_order != 0 || level1_dim > ambient_dim {
        return Err(MatrepError::Invalid(format!(
            "inconsistent level data: order {level0_order}, dim {level1_dim}/{ambient_dim}"
        )));
    }
    Ok(total / level0_order * 3u64.pow((ambient_dim - level1_dim) as u32))
}

/// Reidemeister–Schreier data for the kernel of `Γ° → (finite image)`.
#[derive(Clone, Debug, Serialize)]
pub struct KernelWords {
    pub image_order: usize,
    /// Generators as words in the `Γ°` generators.
    pub in_generators: Vec<Word>,
    /// The same generators as words in `a`, `b`.
    pub words: Vec<Word>,
    pub raw_count: usize,
}

/// Kernel of `x_i ↦ images[i]`, where `x_i` stands for `generators[i]`.
pub fn kernel_words(
    generators: &[Word],
    images: &[Mat3<Gf3>],
    limit: usize,
) -> Result<KernelWords, MatrepError> {
    let (group, elems) = FiniteGroup::from_closure(
        "image",
        Mat3::identity(),
        images,
        |x: &Mat3<Gf3>, y: &Mat3<Gf3>| x.mul(y),
        limit,
    )?;
    let idx: Vec<usize> = images
        .iter()
        .map(|m| elems.iter().position(|e| e == m).expect("generator in closure"))
        .collect();
    let data = reidemeister_schreier(generators.len(), &group, &idx)?;
    let words = data
        .schreier_generators
        .iter()
        .map(|w| w.substitute(generators))
        .collect();
    Ok(KernelWords {
        image_order: group.order(),
        in_generators: data.schreier_generators,
        words,
        raw_count: data.raw_count,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Ambient {
    /// `sl₃(F₃)`, dimension 8.
    Sl3,
    /// `sl₃(F₃)/F₃·I`, dimension 7.
    Sl3ModScalars,
}

impl Ambient {
    pub fn dim(self) -> usize {
        match self {
            Ambient::Sl3 => 8,
            Ambient::Sl3ModScalars => 7,
        }
    }
}

type Vec9 = [Gf3; 9];

fn flatten(m: &Mat3<Gf3>) -> Vec9 {
    std::array::from_fn(|k| m.m[k / 3][k % 3])
}

fn unflatten(v: &Vec9) -> Mat3<Gf3> {
    Mat3::from_fn(|i, j| v[3 * i + j])
}

/// Reduced row echelon basis of the span of `vs`.
fn rref(vs: impl IntoIterator<Item = Vec9>) -> Vec<Vec9> {
    let mut rows: Vec<Vec9> = vs.into_iter().collect();
    let mut r = 0;
    for c in 0..9 {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        rows[r] = rows[r].map(|x| x.mul(&inv));
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c];
                let pr = rows[r];
                for (x, y) in rows[i].iter_mut().zip(pr) {
                    *x = x.sub(&f.mul(&y));
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Subspace of `sl₃(F₃)` stored by a reduced echelon basis (entry order
/// row-major). In the `Sl3ModScalars` ambient, dimensions and equality are
/// taken after adding the scalar line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceGf3 {
    pub ambient: Ambient,
    basis: Vec<Vec9>,
}

impl SubspaceGf3 {
    pub fn span(ms: &[Mat3<Gf3>], ambient: Ambient) -> Self {
        SubspaceGf3 {
            ambient,
            basis: rref(ms.iter().map(flatten)),
        }
    }

    pub fn basis(&self) -> Vec<Mat3<Gf3>> {
        self.basis.iter().map(unflatten).collect()
    }

    /// Dimension inside `sl₃(F₃)`, ignoring the ambient.
    pub fn raw_dim(&self) -> usize {
        self.basis.len()
    }

    fn with_scalars(&self) -> Vec<Vec9> {
        rref(self.basis.iter().copied().chain([flatten(&Mat3::identity())]))
    }

    pub fn dim(&self) -> usize {
        match self.ambient {
            Ambient::Sl3 => self.raw_dim(),
            Ambient::Sl3ModScalars => self.with_scalars().len() - 1,
        }
    }

    pub fn contains(&self, m: &Mat3<Gf3>) -> bool {
        let base = match self.ambient {
            Ambient::Sl3 => self.basis.clone(),
            Ambient::Sl3ModScalars => self.with_scalars(),
        };
        rref(base.iter().copied().chain([flatten(m)])).len() == base.len()
    }

    /// Equality in the ambient (modulo scalars when applicable).
    pub fn same_as(&self, other: &SubspaceGf3) -> bool {
        match self.ambient {
            Ambient::Sl3 => self.basis == other.basis,
            Ambient::Sl3ModScalars => self.with_scalars() == other.with_scalars(),
        }
    }
}

impl Serialize for SubspaceGf3 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SubspaceGf3", 4)?;
        st.serialize_field("ambient", &self.ambient)?;
        st.serialize_field("raw_dim", &self.raw_dim())?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("basis", &self.basis())?;
        st.end()
    }
}

/// `{X ∈ sl₃(F₃) : X₁₁ = 0, X₃₁ = 0}`, i.e. `((0,a,b),(c,d,e),(0,f,−d))`.
pub fn displayed_char0_span() -> SubspaceGf3 {
    let e = |i: usize, j: usize| {
        let mut m = Mat3::<Gf3>::zero();
        m.m[i][j] = Gf3::ONE;
        m
    };
    let d = e(1, 1).sub(&e(2, 2));
    SubspaceGf3::span(
        &[e(0, 1), e(0, 2), e(1, 0), d, e(1, 2), e(2, 1)],
        Ambient::Sl3ModScalars,
    )
}

/// Span of the level-1 logs of `words`; `log` computes one log (and fails if
/// the word is not level-0 trivial).
pub fn level1_span<F>(
    words: &[Word],
    log: F,
    ambient: Ambient,
) -> Result<(SubspaceGf3, Vec<Mat3<Gf3>>), MatrepError>
where
    F: Fn(&Word) -> Result<Mat3<Gf3>, MatrepError> + Sync + Send,
{
    let logs = words.par_iter().map(log).collect::<Result<Vec<_>, _>>()?;
    Ok((SubspaceGf3::span(&logs, ambient), logs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl3_order_and_index() {
        assert_eq!(sl3_f3_order(), 5616);
        assert_eq!(index_reconstruction(27, 6, 7).unwrap(), 624);
        assert_eq!(index_reconstruction(5616, 7, 8).unwrap(), 3);
        assert!(index_reconstruction(25, 6, 7).is_err());
    }

    #[test]
    fn unitriangular_is_a_group_of_order_27() {
        let u = standard_unitriangular();
        let g = finite_image_subgroup(
            &[Mat3::elementary(0, 1, Gf3::ONE), Mat3::elementary(1, 2, Gf3::ONE)],
            1000,
        )
        .unwrap();
        assert_eq!(g.len(), 27);
        assert!(g.iter().all(|m| u.contains(m)));
        assert_eq!(finite_image_subgroup(&[Mat3::identity()], 10).unwrap().len(), 1);
    }

    #[test]
    fn log_of_elementary() {
        let l = Eisen::lambda();
        let m = Mat3::elementary(0, 1, l);
        assert_eq!(level1_log_char0(&m).unwrap(), Mat3::elementary(0, 1, Gf3::ONE).sub(&Mat3::identity()));
        assert!(level1_log_char0(&Mat3::identity()).unwrap() == Mat3::zero());
        let u = RatFuncGf3::monomial(2, 3);
        let x = level1_log_char3(&Mat3::elementary(2, 0, u)).unwrap();
        assert_eq!(x.m[2][0], Gf3::TWO);
        assert!(level1_log_char3(&Mat3::elementary(2, 0, RatFuncGf3::one())).is_err());
    }

    #[test]
    fn displayed_set_dimensions() {
        let d = displayed_char0_span();
        assert_eq!(d.raw_dim(), 6);
        assert_eq!(d.dim(), 6);
        assert!(!d.contains(&Mat3::elementary(2, 0, Gf3::ONE).sub(&Mat3::identity())));
        // adding a scalar does not change the quotient
        let mut ms = d.basis();
        ms.push(Mat3::identity());
        assert!(SubspaceGf3::span(&ms, Ambient::Sl3ModScalars).same_as(&d));
    }
}
