use serde::Serialize;

use super::word::Word;
use super::GroupError;
use crate::polymap::FiniteGroup;

/// Transversal and Schreier generators of the kernel of a map from a free
/// group onto a finite group.
#[derive(Clone, Debug, Serialize)]
pub struct SubgroupData {
    /// `transversal[x]` represents the coset mapping to group element `x`.
    pub transversal: Vec<Word>,
    pub schreier_generators: Vec<Word>,
    /// Number of pairs `(t, g)` examined, i.e. index × generator count.
    pub raw_count: usize,
}

impl SubgroupData {
    pub fn index(&self) -> usize {
        self.transversal.len()
    }
}

/// Letters in shortlex order `x₁ < x₁⁻¹ < x₂ < x₂⁻¹ < …`.
fn letter_order(n: usize) -> Vec<i32> {
    (1..=n as i32).flat_map(|g| [g, -g]).collect()
}

/// Reidemeister–Schreier for the kernel of `x_g ↦ images[g]` from the free
/// group of rank `generator_count` onto `target`.
///
/// Coset representatives are shortlex-minimal words (found by breadth-first
/// search in letter order). The Schreier generators are
/// `t·x·rep(t·x)⁻¹` over transversal elements `t` (in transversal order) and
/// generators `x`, with trivial ones discarded.
pub fn reidemeister_schreier(
    generator_count: usize,
    target: &FiniteGroup,
    images: &[usize],
) -> Result<SubgroupData, GroupError> {
    if images.len() != generator_count {
        return Err(GroupError::ImageCount {
            expected: generator_count,
            got: images.len(),
        });
    }
    let n = target.order();
    let mut rep: Vec<Option<Word>> = vec![None; n];
    rep[target.identity()] = Some(Word::identity());
    let mut order = vec![target.identity()];
    let letters = letter_order(generator_count);
    let mut k = 0;
    while k < order.len() {
        let x = order[k];
        k += 1;
        for &l in &letters {
            let g = images[l.unsigned_abs() as usize - 1];
            let y = target.mul(x, if l > 0 { g } else { target.inv(g) });
            if rep[y].is_none() {
                let w = rep[x].as_ref().expect("visited").mul(&Word::from_letters([l]));
                rep[y] = Some(w);
                order.push(y);
            }
        }
    }
    if order.len() != n {
        return Err(GroupError::NotGenerating {
            reached: order.len(),
            order: n,
        });
    }
    let mut gens = Vec::new();
    for &x in &order {
        let t = rep[x].as_ref().expect("visited");
        for (g, &img) in images.iter().enumerate() {
            let y = target.mul(x, img);
            let s = t
                .mul(&Word::gen(g))
                .mul(&rep[y].as_ref().expect("visited").inverse());
            if !s.is_identity() {
                gens.push(s);
            }
        }
    }
    Ok(SubgroupData {
        transversal: order.iter().map(|&x| rep[x].clone().expect("visited")).collect(),
        schreier_generators: gens,
        raw_count: n * generator_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_mu() {
        let c3 = FiniteGroup::cyclic(3);
        let d = reidemeister_schreier(2, &c3, &[1, 2]).unwrap();
        let shown: Vec<String> = d.schreier_generators.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, ["b*a", "a^3", "a*b", "a^-1*b*a^-1"]);
        let t: Vec<String> = d.transversal.iter().map(|w| w.to_string()).collect();
        assert_eq!(t, ["1", "a", "a^-1"]);
    }

    #[test]
    fn trivial_map_returns_generators() {
        let d = reidemeister_schreier(2, &FiniteGroup::trivial(), &[0, 0]).unwrap();
        assert_eq!(d.schreier_generators, vec![Word::gen(0), Word::gen(1)]);
    }

    #[test]
    fn rank_formula() {
        let h = FiniteGroup::heisenberg(3);
        // (1,0,0) and (0,1,0) generate
        let d = reidemeister_schreier(4, &h, &[9, 3, 9, 3]).unwrap();
        assert_eq!(d.raw_count, 108);
        assert_eq!(d.schreier_generators.len(), 1 + 27 * 3);
    }

    #[test]
    fn not_generating() {
        let c9 = FiniteGroup::cyclic(9);
        assert!(matches!(
            reidemeister_schreier(1, &c9, &[3]),
            Err(GroupError::NotGenerating { reached: 3, order: 9 })
        ));
    }
}
