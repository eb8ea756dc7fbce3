use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{FiniteGroup, PolymapError};

/// A map `φ: G → H` between finite groups, stored as an image table.
#[derive(Clone, Debug, Serialize)]
pub struct MapTable {
    #[serde(skip)]
    pub domain: Arc<FiniteGroup>,
    #[serde(skip)]
    pub codomain: Arc<FiniteGroup>,
    pub images: Vec<usize>,
}

impl PartialEq for MapTable {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
            && Arc::ptr_eq(&self.domain, &other.domain)
            && Arc::ptr_eq(&self.codomain, &other.codomain)
    }
}

impl MapTable {
    pub fn new(
        domain: Arc<FiniteGroup>,
        codomain: Arc<FiniteGroup>,
        images: Vec<usize>,
    ) -> Result<Self, PolymapError> {
        if images.len() != domain.order() {
            return Err(PolymapError::Mismatch(format!(
                "{} images for a domain of order {}",
                images.len(),
                domain.order()
            )));
        }
        if let Some(&x) = images.iter().find(|&&x| x >= codomain.order()) {
            return Err(PolymapError::Mismatch(format!("image {x} out of range")));
        }
        Ok(MapTable {
            domain,
            codomain,
            images,
        })
    }

    pub fn constant(domain: Arc<FiniteGroup>, codomain: Arc<FiniteGroup>, h: usize) -> Self {
        let images = vec![h; domain.order()];
        MapTable {
            domain,
            codomain,
            images,
        }
    }

    pub fn at(&self, g: usize) -> usize {
        self.images[g]
    }

    pub fn is_unital(&self) -> bool {
        self.images[self.domain.identity()] == self.codomain.identity()
    }

    pub fn is_trivial(&self) -> bool {
        let e = self.codomain.identity();
        self.images.iter().all(|&x| x == e)
    }

    pub fn is_homomorphism(&self) -> bool {
        let (g, h) = (&self.domain, &self.codomain);
        (0..g.order()).all(|x| {
            (0..g.order()).all(|y| self.at(g.mul(x, y)) == h.mul(self.at(x), self.at(y)))
        })
    }

    fn with_images(&self, images: Vec<usize>) -> Self {
        MapTable {
            domain: Arc::clone(&self.domain),
            codomain: Arc::clone(&self.codomain),
            images,
        }
    }
}

/// `(Δₖφ)(g) = φ(kg)·φ(g)⁻¹`.
pub fn delta(phi: &MapTable, k: usize) -> MapTable {
    let (g, h) = (&phi.domain, &phi.codomain);
    let images = (0..g.order())
        .map(|x| h.mul(phi.at(g.mul(k, x)), h.inv(phi.at(x))))
        .collect();
    phi.with_images(images)
}

/// `βₖ(g) = φ(k)⁻¹·(Δₖφ)(g)`, always unital.
pub fn beta(phi: &MapTable, k: usize) -> MapTable {
    let h = &phi.codomain;
    let d = delta(phi, k);
    let c = h.inv(phi.at(k));
    let images = d.images.iter().map(|&x| h.mul(c, x)).collect();
    phi.with_images(images)
}

/// Memoized degree tester for maps between one fixed pair of groups.
pub struct DegreeOracle {
    domain: Arc<FiniteGroup>,
    codomain: Arc<FiniteGroup>,
    memo: HashMap<(Vec<usize>, i64), bool>,
}

impl DegreeOracle {
    pub fn new(domain: Arc<FiniteGroup>, codomain: Arc<FiniteGroup>) -> Self {
        DegreeOracle {
            domain,
            codomain,
            memo: HashMap::new(),
        }
    }

    /// Whether `images` defines a map of degree at most `d` (`d ≥ −1`).
    pub fn degree_at_most(&mut self, images: &[usize], d: i64) -> bool {
        assert!(d >= -1, "degree must be at least -1");
        let e = self.codomain.identity();
        if d == -1 {
            return images.iter().all(|&x| x == e);
        }
        if let Some(&ans) = self.memo.get(&(images.to_vec(), d)) {
            return ans;
        }
        let (g, h) = (Arc::clone(&self.domain), Arc::clone(&self.codomain));
        let ans = (0..g.order()).all(|k| {
            let diff: Vec<usize> = (0..g.order())
                .map(|x| h.mul(images[g.mul(k, x)], h.inv(images[x])))
                .collect();
            self.degree_at_most(&diff, d - 1)
        });
        self.memo.insert((images.to_vec(), d), ans);
        ans
    }

    /// Exact degree, or `None` if it exceeds `max_d`.
    pub fn degree(&mut self, images: &[usize], max_d: i64) -> Option<i64> {
        (-1..=max_d).find(|&d| self.degree_at_most(images, d))
    }
}

pub fn degree_at_most(phi: &MapTable, d: i64) -> bool {
    DegreeOracle::new(Arc::clone(&phi.domain), Arc::clone(&phi.codomain))
        .degree_at_most(&phi.images, d)
}

/// All unital maps `G → H` of degree at most `d`, in lexicographic order of
/// the images of the non-identity elements of `G` (in index order).
pub fn classify_unital_polynomial_maps(
    g: &Arc<FiniteGroup>,
    h: &Arc<FiniteGroup>,
    d: i64,
    guard: u128,
) -> Result<Vec<MapTable>, PolymapError> {
    let free: Vec<usize> = (0..g.order()).filter(|&x| x != g.identity()).collect();
    let needed = (h.order() as u128)
        .checked_pow(free.len() as u32)
        .unwrap_or(u128::MAX);
    if needed > guard {
        return Err(PolymapError::Guard {
            needed,
            limit: guard,
        });
    }
    if free.is_empty() {
        let phi = MapTable::constant(Arc::clone(g), Arc::clone(h), h.identity());
        return Ok(if d >= -1 { vec![phi] } else { vec![] });
    }
    let n = h.order();
    let rest = free.len() - 1;
    let per_first: Vec<Vec<Vec<usize>>> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut oracle = DegreeOracle::new(Arc::clone(g), Arc::clone(h));
            let mut found = Vec::new();
            let mut digits = vec![0usize; rest];
            loop {
                let mut images = vec![h.identity(); g.order()];
                images[free[0]] = first;
                for (slot, &x) in free[1..].iter().zip(&digits) {
                    images[*slot] = x;
                }
                if oracle.degree_at_most(&images, d) {
                    found.push(images);
                }
                // odometer, last position fastest
                let mut i = rest;
                loop {
                    if i == 0 {
                        return found;
                    }
                    i -= 1;
                    digits[i] += 1;
                    if digits[i] < n {
                        break;
                    }
                    digits[i] = 0;
                }
            }
        })
        .collect();
    Ok(per_first
        .into_iter()
        .flatten()
        .map(|images| MapTable {
            domain: Arc::clone(g),
            codomain: Arc::clone(h),
            images,
        })
        .collect())
}
