use super::{FiniteGroup, PolymapError};

const ISO_ORDER_LIMIT: usize = 100;

/// Greedy generating set: repeatedly add the first element of largest order
/// outside the subgroup generated so far.
fn generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut sub = g.generated_subgroup(&gens);
    while sub.len() < g.order() {
        let mut inside = vec![false; g.order()];
        for &x in &sub {
            inside[x] = true;
        }
        let next = (0..g.order())
            .filter(|&x| !inside[x])
            .max_by_key(|&x| (g.element_order(x), std::cmp::Reverse(x)))
            .expect("proper subgroup");
        gens.push(next);
        sub = g.generated_subgroup(&gens);
    }
    gens
}

/// Spanning tree of `g` over right multiplication by `gens`: for each
/// non-identity element, its parent and the generator used.
fn spanning_tree(g: &FiniteGroup, gens: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut seen = vec![false; g.order()];
    seen[g.identity()] = true;
    let mut order = vec![g.identity()];
    let mut edges = Vec::new();
    let mut k = 0;
    while k < order.len() {
        let x = order[k];
        k += 1;
        for (i, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                order.push(y);
                edges.push((x, i, y));
            }
        }
    }
    edges
}

/// Extends `gens[i] ↦ images[i]` to a homomorphism `G → H`, returning the
/// full image table, or `None` if no homomorphism has these values. `gens`
/// must generate `G`.
pub fn extend_homomorphism(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut f = vec![usize::MAX; g.order()];
    f[g.identity()] = h.identity();
    for (x, i, y) in spanning_tree(g, gens) {
        f[y] = h.mul(f[x], images[i]);
    }
    if f.contains(&usize::MAX) {
        return None;
    }
    for x in 0..g.order() {
        for (i, &s) in gens.iter().enumerate() {
            if f[g.mul(x, s)] != h.mul(f[x], images[i]) {
                return None;
            }
        }
    }
    Some(f)
}

fn bijections(g: &FiniteGroup, h: &FiniteGroup, first_only: bool) -> Vec<Vec<usize>> {
    let gens = generating_set(g);
    let orders: Vec<usize> = gens.iter().map(|&x| g.element_order(x)).collect();
    let candidates: Vec<Vec<usize>> = orders
        .iter()
        .map(|&o| (0..h.order()).filter(|&y| h.element_order(y) == o).collect())
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; gens.len()];
    if candidates.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let images: Vec<usize> = pick.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Some(f) = extend_homomorphism(g, h, &gens, &images) {
            let mut hit = vec![false; h.order()];
            if f.iter().all(|&y| !std::mem::replace(&mut hit[y], true)) {
                out.push(f);
                if first_only {
                    return out;
                }
            }
        }
        let mut i = gens.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < candidates[i].len() {
                break;
            }
            pick[i] = 0;
        }
    }
}

/// An isomorphism `G → H` as an image table, if one exists.
pub fn find_isomorphism(
    g: &FiniteGroup,
    h: &FiniteGroup,
) -> Result<Option<Vec<usize>>, PolymapError> {
    if g.order().max(h.order()) > ISO_ORDER_LIMIT {
        return Err(PolymapError::Guard {
            needed: g.order().max(h.order()) as u128,
            limit: ISO_ORDER_LIMIT as u128,
        });
    }
    if g.order() != h.order() {
        return Ok(None);
    }
    Ok(bijections(g, h, true).into_iter().next())
}

pub fn is_isomorphic_small(g: &FiniteGroup, h: &FiniteGroup) -> Result<bool, PolymapError> {
    Ok(find_isomorphism(g, h)?.is_some())
}

/// Every automorphism of `G`, as image tables.
pub fn automorphisms(g: &FiniteGroup) -> Result<Vec<Vec<usize>>, PolymapError> {
    if g.order() > ISO_ORDER_LIMIT {
        return Err(PolymapError::Guard {
            needed: g.order() as u128,
            limit: ISO_ORDER_LIMIT as u128,
        });
    }
    Ok(bijections(g, g, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_isomorphisms() {
        let m = FiniteGroup::metacyclic(9, 3, 4).unwrap();
        let m7 = FiniteGroup::metacyclic(9, 3, 7).unwrap();
        let h = FiniteGroup::heisenberg(3);
        assert!(is_isomorphic_small(&m, &m7).unwrap());
        assert!(!is_isomorphic_small(&m, &h).unwrap());
        assert!(is_isomorphic_small(&h, &h).unwrap());
        let c6 = FiniteGroup::cyclic(6);
        assert!(!is_isomorphic_small(&c6, &FiniteGroup::symmetric3()).unwrap());
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&FiniteGroup::cyclic(9)).unwrap().len(), 6);
        assert_eq!(automorphisms(&FiniteGroup::symmetric3()).unwrap().len(), 6);
        // |Aut(Heis(3))| = |GL₂(F₃)| · 9 = 432
        assert_eq!(automorphisms(&FiniteGroup::heisenberg(3)).unwrap().len(), 432);
    }
}
