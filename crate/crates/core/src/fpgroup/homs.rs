use super::presentation::Presentation;
use super::GroupError;
use crate::polymap::FiniteGroup;

fn check_guard(p: &Presentation, h: &FiniteGroup, guard: u128) -> Result<(), GroupError> {
    let needed = (h.order() as u128)
        .checked_pow(p.generator_count() as u32)
        .unwrap_or(u128::MAX);
    if needed > guard {
        return Err(GroupError::SizeGuard {
            needed,
            limit: guard,
        });
    }
    Ok(())
}

/// All generator-image tuples satisfying every relator, in lexicographic order.
pub fn all_homs(
    p: &Presentation,
    h: &FiniteGroup,
    guard: u128,
) -> Result<Vec<Vec<usize>>, GroupError> {
    check_guard(p, h, guard)?;
    let n = p.generator_count();
    let mut out = Vec::new();
    let mut images = vec![0usize; n];
    loop {
        if p
            .relators
            .iter()
            .all(|r| h.eval_word(r, &images) == h.identity())
        {
            out.push(images.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            images[i] += 1;
            if images[i] < h.order() {
                break;
            }
            images[i] = 0;
        }
    }
}

/// `|Hom(G, H)|` for the group `G` presented by `p`.
pub fn count_homs(p: &Presentation, h: &FiniteGroup, guard: u128) -> Result<usize, GroupError> {
    Ok(all_homs(p, h, guard)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_into_s3() {
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(count_homs(&Presentation::gamma(), &s3, 1000).unwrap(), 9);
        assert_eq!(count_homs(&Presentation::pol2_c3(), &s3, 1000).unwrap(), 9);
        assert_eq!(
            count_homs(&Presentation::gamma(), &FiniteGroup::trivial(), 1).unwrap(),
            1
        );
    }

    #[test]
    fn guard_is_enforced() {
        let c9 = FiniteGroup::cyclic(9);
        assert!(matches!(
            count_homs(&Presentation::gamma(), &c9, 80),
            Err(GroupError::SizeGuard { needed: 81, .. })
        ));
    }
}
