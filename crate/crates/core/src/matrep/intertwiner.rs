use serde::Serialize;

use super::mat3::Mat3;
use super::MatrepError;
use crate::exactfields::Gf3;
use crate::polymap::{automorphisms, extend_homomorphism, FiniteGroup};

#[derive(Clone, Debug, Serialize)]
pub struct IntertwinerResult {
    pub automorphism_count: usize,
    /// Images of `E₁₂(1)` and `E₂₃(1)` under an intertwining automorphism.
    pub witness: Option<[Mat3<Gf3>; 2]>,
    /// Whether `images1[i] ↦ images2[i]` extends to a bijective homomorphism,
    /// computed without enumerating automorphisms; must agree with `witness`.
    pub direct_extension: bool,
}

/// Looks for `α ∈ Aut(U₊)` with `α(images1[i]) = images2[i]` for all `i`,
/// where `U₊ ⊂ SL₃(F₃)` is the standard unitriangular group.
pub fn automorphism_intertwiner_search(
    images1: &[Mat3<Gf3>],
    images2: &[Mat3<Gf3>],
) -> Result<IntertwinerResult, MatrepError> {
    if images1.len() != images2.len() {
        return Err(MatrepError::Invalid("image lists differ in length".into()));
    }
    let gens = [
        Mat3::elementary(0, 1, Gf3::ONE),
        Mat3::elementary(1, 2, Gf3::ONE),
    ];
    let (u, elems) = FiniteGroup::from_closure(
        "U+",
        Mat3::identity(),
        &gens,
        |x: &Mat3<Gf3>, y: &Mat3<Gf3>| x.mul(y),
        1000,
    )?;
    let locate = |ms: &[Mat3<Gf3>]| -> Result<Vec<usize>, MatrepError> {
        let idx = ms
            .iter()
            .map(|m| {
                elems
                    .iter()
                    .position(|e| e == m)
                    .ok_or_else(|| MatrepError::NotGenerating(format!("{m} is not in U₊")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if u.generated_subgroup(&idx).len() != u.order() {
            return Err(MatrepError::NotGenerating("images generate a proper subgroup".into()));
        }
        Ok(idx)
    };
    let (i1, i2) = (locate(images1)?, locate(images2)?);
    let auts = automorphisms(&u)?;
    let gen_idx = [1usize, 2].map(|k| elems.iter().position(|e| *e == gens[k - 1]).expect("generator"));
    let witness = auts
        .iter()
        .find(|a| i1.iter().zip(&i2).all(|(&x, &y)| a[x] == y))
        .map(|a| gen_idx.map(|g| elems[a[g]].clone()));
    let direct_extension = extend_homomorphism(&u, &u, &i1, &i2).is_some_and(|f| {
        let mut hit = vec![false; u.order()];
        f.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    });
    Ok(IntertwinerResult {
        automorphism_count: auts.len(),
        witness,
        direct_extension,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_obstruction() {
        let x = Mat3::elementary(0, 1, Gf3::ONE);
        let y = Mat3::elementary(1, 2, Gf3::ONE);
        let z = Mat3::elementary(0, 2, Gf3::ONE);
        let r = automorphism_intertwiner_search(&[x.clone(), y.clone()], &[x.clone(), y.clone()]).unwrap();
        assert_eq!(r.automorphism_count, 432);
        assert_eq!(r.witness, Some([x.clone(), y.clone()]));
        assert!(r.direct_extension);
        // a central element cannot map to a non-central one
        let r = automorphism_intertwiner_search(&[x.clone(), y.clone(), z.clone()], &[x.clone(), y.clone(), x.clone()]).unwrap();
        assert!(r.witness.is_none() && !r.direct_extension);
        assert!(automorphism_intertwiner_search(&[z.clone()], &[z]).is_err());
    }
}
