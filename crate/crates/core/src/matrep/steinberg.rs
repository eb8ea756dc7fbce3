use std::collections::BTreeSet;

use serde::Serialize;

use super::mat3::Mat3;
use super::search::ElementaryTarget;
use crate::exactfields::RatFuncGf3;

pub const EUCLIDEAN_LEMMA: &str = "for a Euclidean ring A and ideal q, the congruence subgroup \
    SL_3(A, q) is generated by the elementary matrices E_ij(x), x in q";

#[derive(Clone, Debug, Serialize)]
pub struct SteinbergVerdict {
    pub identities_checked: usize,
    pub failures: Vec<String>,
    /// Targets `E_ij(u²)`, `E_ij(u³)` with no verified word.
    pub missing: Vec<ElementaryTarget>,
    /// Every `E_ij(u^n)`, `2 ≤ n ≤ derived_up_to`, obtained from the found
    /// set by verified commutators.
    pub derived_up_to: u32,
    pub complete: bool,
    pub assumed_lemma: &'static str,
}

fn e(i: usize, j: usize, p: u32, c: i64) -> Mat3<RatFuncGf3> {
    Mat3::elementary(i, j, RatFuncGf3::monomial(c, 3 * p as i64))
}

/// Checks `[E_ij(u^p), E_jk(u^q)] = E_ik(u^{p+q})` (`i`, `j`, `k` distinct) by
/// multiplication, starting from the verified `found` targets and closing up
/// to `u`-degree `max_power`. Generation of the whole level-`u²` congruence
/// subgroup by these elementary matrices is the assumed Euclidean lemma.
pub fn steinberg_closure(found: &[ElementaryTarget], max_power: u32) -> SteinbergVerdict {
    let mut have: BTreeSet<(usize, usize, u32)> = found
        .iter()
        .filter_map(|t| match *t {
            ElementaryTarget::Elementary { i, j, power } => Some((i, j, power)),
            ElementaryTarget::Identity => None,
        })
        .collect();
    let missing: Vec<ElementaryTarget> = ElementaryTarget::char3_defaults()
        .into_iter()
        .filter(|t| match *t {
            ElementaryTarget::Elementary { i, j, power } => !have.contains(&(i, j, power)),
            ElementaryTarget::Identity => false,
        })
        .collect();
    let mut checked = 0;
    let mut failures = Vec::new();
    loop {
        let mut new = Vec::new();
        for &(i, j, p) in &have {
            for &(j2, k, q) in &have {
                if j2 != j || k == i || p + q > max_power || have.contains(&(i, k, p + q)) {
                    continue;
                }
                let c = Mat3::commutator(&e(i, j, p, 1), &e(i, j, p, -1), &e(j, k, q, 1), &e(j, k, q, -1));
                checked += 1;
                if c == e(i, k, p + q, 1) {
                    new.push((i, k, p + q));
                } else {
                    failures.push(format!("[E{}{}(u^{p}), E{}{}(u^{q})] = {c}", i + 1, j + 1, j + 1, k + 1));
                }
            }
        }
        if new.is_empty() {
            break;
        }
        have.extend(new);
    }
    // additivity E_ij(x)E_ij(y) = E_ij(x + y), used for coefficient 2
    for &(i, j, p) in &have {
        checked += 1;
        if e(i, j, p, 1).mul(&e(i, j, p, 1)) != e(i, j, p, 2) {
            failures.push(format!("E{}{}(u^{p})² ≠ E{}{}(2u^{p})", i + 1, j + 1, i + 1, j + 1));
        }
    }
    let pairs: Vec<(usize, usize)> = (0..3)
        .flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let derived_up_to = (2..=max_power)
        .take_while(|&n| pairs.iter().all(|&(i, j)| have.contains(&(i, j, n))))
        .last()
        .unwrap_or(0);
    SteinbergVerdict {
        identities_checked: checked,
        complete: missing.is_empty() && failures.is_empty() && derived_up_to == max_power,
        failures,
        missing,
        derived_up_to,
        assumed_lemma: EUCLIDEAN_LEMMA,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfields::Ring;

    #[test]
    fn commutator_identity() {
        let c = Mat3::commutator(&e(0, 1, 2, 1), &e(0, 1, 2, -1), &e(1, 2, 3, 1), &e(1, 2, 3, -1));
        assert_eq!(c, e(0, 2, 5, 1));
        let bad = Mat3::commutator(&e(0, 1, 2, 1), &e(0, 1, 2, -1), &e(1, 0, 2, 1), &e(1, 0, 2, -1));
        let off: usize = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && !bad.m[i][j].is_zero())
            .count();
        assert!(off != 1 || (0..3).any(|i| !bad.m[i][i].is_one()));
    }

    #[test]
    fn full_set_closes() {
        let v = steinberg_closure(&ElementaryTarget::char3_defaults(), 9);
        assert!(v.complete, "{v:?}");
        assert_eq!(v.derived_up_to, 9);
        let partial = steinberg_closure(&ElementaryTarget::char3_defaults()[..6], 9);
        assert!(!partial.complete);
        assert_eq!(partial.missing.len(), 6);
    }
}
