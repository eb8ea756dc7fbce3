use serde::Serialize;

use super::mat3::Mat3;
use super::MatrepError;
use crate::exactfields::{Eisen, Field, RatFuncGf3, Ring, Tower};
use crate::fpgroup::{Presentation, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EvalMode {
    Exact,
    /// Matrices are compared up to scalars.
    Projective,
}

/// Images of the generators (and their inverses) of a free group.
#[derive(Clone, Debug)]
pub struct WordEvaluator<R: Ring> {
    images: Vec<Mat3<R>>,
    inverses: Vec<Mat3<R>>,
    pub mode: EvalMode,
}

impl<R: Ring> WordEvaluator<R> {
    /// Builds an evaluator from images and supplied inverses; each inverse is
    /// checked by multiplication.
    pub fn with_inverses(
        images: Vec<Mat3<R>>,
        inverses: Vec<Mat3<R>>,
        mode: EvalMode,
    ) -> Result<Self, MatrepError> {
        if images.len() != inverses.len() {
            return Err(MatrepError::Invalid("image/inverse count mismatch".into()));
        }
        for (g, (m, mi)) in images.iter().zip(&inverses).enumerate() {
            if !m.mul(mi).is_identity() || !mi.mul(m).is_identity() {
                return Err(MatrepError::Invalid(format!("inverse of generator {g} is wrong")));
            }
        }
        Ok(WordEvaluator {
            images,
            inverses,
            mode,
        })
    }

    /// Builds an evaluator over a ring for determinant-1 images, using the
    /// adjugate as inverse.
    pub fn unimodular(images: Vec<Mat3<R>>, mode: EvalMode) -> Result<Self, MatrepError> {
        let inverses = images.iter().map(Mat3::adjugate).collect();
        WordEvaluator::with_inverses(images, inverses, mode)
    }

    pub fn generator_count(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, g: usize) -> &Mat3<R> {
        &self.images[g]
    }

    pub fn inverse_image(&self, g: usize) -> &Mat3<R> {
        &self.inverses[g]
    }

    pub fn letter(&self, l: i32) -> &Mat3<R> {
        let g = l.unsigned_abs() as usize - 1;
        if l > 0 {
            &self.images[g]
        } else {
            &self.inverses[g]
        }
    }

    /// Exact product of the letter images (no projective normalization).
    pub fn eval_word(&self, w: &Word) -> Mat3<R> {
        let mut it = w.letters().iter();
        match it.next() {
            None => Mat3::identity(),
            Some(&l) => it.fold(self.letter(l).clone(), |acc, &l| acc.mul(self.letter(l))),
        }
    }

    /// Whether `M` is trivial in this evaluator's sense (identity, or scalar
    /// in projective mode).
    pub fn is_trivial(&self, m: &Mat3<R>) -> bool {
        match self.mode {
            EvalMode::Exact => m.is_identity(),
            EvalMode::Projective => m.scalar_value().is_some_and(|c| !c.is_zero()),
        }
    }
}

impl<F: Field> WordEvaluator<F> {
    pub fn from_field_images(images: Vec<Mat3<F>>, mode: EvalMode) -> Result<Self, MatrepError> {
        let inverses = images
            .iter()
            .map(|m| m.inverse().map_err(MatrepError::from))
            .collect::<Result<Vec<_>, _>>()?;
        WordEvaluator::with_inverses(images, inverses, mode)
    }

    /// Replaces one generator image (used for negative controls).
    pub fn with_image(&self, g: usize, m: Mat3<F>) -> Result<Self, MatrepError> {
        let mut images = self.images.clone();
        images[g] = m;
        WordEvaluator::from_field_images(images, self.mode)
    }
}

/// Result of evaluating one relator.
#[derive(Clone, Debug, Serialize)]
pub struct RelatorCheck {
    pub relator: String,
    pub ok: bool,
    /// The scalar `c` with image `c·I`, when the image is scalar.
    pub scalar: Option<String>,
    /// The full image when the check fails.
    pub residual: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelatorReport {
    pub ok: bool,
    pub mode: EvalMode,
    pub relators: Vec<RelatorCheck>,
}

pub fn check_relators<R: Ring>(ev: &WordEvaluator<R>, p: &Presentation) -> RelatorReport {
    let relators: Vec<RelatorCheck> = p
        .relators
        .iter()
        .map(|r| {
            let m = ev.eval_word(r);
            let ok = ev.is_trivial(&m);
            RelatorCheck {
                relator: p.format_word(r),
                ok,
                scalar: m.scalar_value().map(|c| c.to_string()),
                residual: (!ok).then(|| m.to_string()),
            }
        })
        .collect();
    RelatorReport {
        ok: relators.iter().all(|c| c.ok),
        mode: ev.mode,
        relators,
    }
}

fn e(c0: i64, c1: i64, den: i64) -> Eisen {
    Eisen::from_frac(c0, c1, den)
}

/// Eisenstein parts `A`, `B` of `π(a) = r²·A`, `π(b) = r·B`.
pub fn pi_eisen_parts() -> (Mat3<Eisen>, Mat3<Eisen>) {
    let a = Mat3::new([
        [e(0, 1, 1), e(-1, -2, 3), e(-2, -1, 3)],
        [e(-1, 0, 1), e(0, -1, 1), e(-1, -2, 3)],
        [e(-1, -1, 1), e(1, 0, 1), e(1, 0, 1)],
    ]);
    let b = Mat3::new([
        [e(0, 0, 1), e(0, 0, 1), e(2, 1, 3)],
        [e(1, 0, 1), e(0, 0, 1), e(1, 1, 1)],
        [e(0, 0, 1), e(1, 0, 1), e(0, 1, 1)],
    ]);
    (a, b)
}

/// Raw images of `a`, `b` under `π` over `E = Q(ω)(r)`.
pub fn pi_matrices() -> [Mat3<Tower>; 2] {
    let (a, b) = pi_eisen_parts();
    [
        a.map(|x| Tower::monomial(x.clone(), 2)),
        b.map(|x| Tower::monomial(x.clone(), 1)),
    ]
}

/// Raw images of `a`, `b` under `ρ` over `F₃(t)`.
pub fn rho_matrices() -> [Mat3<RatFuncGf3>; 2] {
    let m = |c: i64, k: i64| RatFuncGf3::monomial(c, k);
    let z = RatFuncGf3::zero;
    [
        Mat3::new([
            [z(), z(), m(1, -1)],
            [m(2, -1), z(), z()],
            [m(2, 2), m(2, 2), z()],
        ]),
        Mat3::new([
            [z(), m(2, 1), z()],
            [z(), z(), m(2, -2)],
            [m(1, 1), z(), m(1, 1)],
        ]),
    ]
}

/// `π` as a projective evaluator. Checks that every entry of `π(a)` is
/// `r²·Eisen` and every entry of `π(b)` is `r·Eisen`.
pub fn pi_generators() -> Result<WordEvaluator<Tower>, MatrepError> {
    let mats = pi_matrices();
    for (g, k) in [(0usize, 2usize), (1, 1)] {
        if !mats[g]
            .entries()
            .all(|x| x.is_zero() || x.as_monomial().is_some_and(|(d, _)| d == k))
        {
            return Err(MatrepError::Transcription(format!(
                "generator {g} is not homogeneous of r-degree {k}"
            )));
        }
    }
    WordEvaluator::from_field_images(mats.to_vec(), EvalMode::Projective)
}

/// `ρ` as an exact evaluator. Checks `det = 1` for both generators.
pub fn rho_generators() -> Result<WordEvaluator<RatFuncGf3>, MatrepError> {
    rho_from(rho_matrices().to_vec())
}

pub fn rho_from(mats: Vec<Mat3<RatFuncGf3>>) -> Result<WordEvaluator<RatFuncGf3>, MatrepError> {
    for (g, m) in mats.iter().enumerate() {
        if !m.det().is_one() {
            return Err(MatrepError::Transcription(format!(
                "det ρ(generator {g}) = {} ≠ 1",
                m.det()
            )));
        }
    }
    WordEvaluator::from_field_images(mats, EvalMode::Exact)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transcription_spot_checks() {
        let [pa, pb] = pi_matrices();
        assert_eq!(pa.get(2, 0).to_string(), Tower::monomial(e(-1, -1, 1), 2).to_string());
        assert_eq!(*pb.get(1, 0), Tower::r());
        assert!(pb.get(0, 0).is_zero());
        let [ra, rb] = rho_matrices();
        assert!(ra.det().is_one() && rb.det().is_one());
        assert_eq!(*rb.get(2, 2), RatFuncGf3::t());
    }

    #[test]
    fn pi_dets_are_one() {
        let [pa, pb] = pi_matrices();
        assert!(pa.det().is_one());
        assert!(pb.det().is_one());
    }

    #[test]
    fn relators_hold() {
        let g = Presentation::gamma();
        assert!(check_relators(&rho_generators().unwrap(), &g).ok);
        let rep = check_relators(&pi_generators().unwrap(), &g);
        assert!(rep.ok, "{rep:?}");
    }

    #[test]
    fn rho_trace_of_b() {
        let ev = rho_generators().unwrap();
        let b = ev.eval_word(&Word::gen(1));
        assert_eq!(b.trace(), RatFuncGf3::t());
        let a2 = ev.eval_word(&Word::gen(0).pow(2));
        assert_eq!(a2.trace(), RatFuncGf3::t());
        assert!(ev.eval_word(&Word::gen(0).mul(&Word::gen_inv(0))).is_identity());
    }
}
