//! Bounded breadth-first search for words evaluating to elementary matrices.
//!
//! Group elements are hashed in a canonical form. Each level of the search is
//! expanded in parallel and merged in a fixed order, so the first word found
//! for an element is its shortlex-minimal word within the bounds.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use super::grading::normalize_psl;
use super::mat3::Mat3;
use super::MatrepError;
use crate::exactfields::{Eisen, Gf3, PolyGf3, RatFuncGf3};
use crate::fpgroup::Word;

/// Group element usable in the search. `mul` returns `None` when the product
/// leaves the search bounds.
pub trait SearchElem: Clone + Eq + Hash + Send + Sync {
    type Bound: Sync;

    fn mul(&self, o: &Self, bound: &Self::Bound) -> Option<Self>;
    fn inverse(&self, bound: &Self::Bound) -> Option<Self>;
    fn is_identity(&self) -> bool;
}

/// Matrix over `F₃[u]` with every entry of `u`-degree at most 7, packed two
/// bits per coefficient.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PackedU(pub [u16; 9]);

const PACK_DEG: usize = 7;

fn unpack(p: u16) -> [u8; 8] {
    std::array::from_fn(|k| ((p >> (2 * k)) & 3) as u8)
}

fn pack(c: &[u8], max_deg: usize) -> Option<u16> {
    let mut out = 0u16;
    for (k, &x) in c.iter().enumerate() {
        let x = x % 3;
        if x != 0 {
            if k > max_deg {
                return None;
            }
            out |= (x as u16) << (2 * k);
        }
    }
    Some(out)
}

impl PackedU {
    pub fn identity() -> Self {
        let mut m = [0u16; 9];
        for i in 0..3 {
            m[4 * i] = 1;
        }
        PackedU(m)
    }

    /// Packs a matrix over `F₃(t)` whose entries are polynomials in `u = t³`
    /// of degree at most 7.
    pub fn from_mat(m: &Mat3<RatFuncGf3>) -> Option<Self> {
        let mut out = [0u16; 9];
        for (k, x) in m.entries().enumerate() {
            if !x.is_polynomial() {
                return None;
            }
            let p = x.num().compress_to_u().ok()?;
            out[k] = pack(p.coeffs(), PACK_DEG)?;
        }
        Some(PackedU(out))
    }

    pub fn to_mat(&self) -> Mat3<RatFuncGf3> {
        Mat3::from_fn(|i, j| {
            let c = unpack(self.0[3 * i + j]);
            let p = PolyGf3::from_coeffs(c.iter().map(|&x| x as i64));
            RatFuncGf3::from_poly(p.expand_from_u())
        })
    }

    /// Largest `u`-degree among the entries.
    pub fn degree(&self) -> usize {
        self.0
            .iter()
            .map(|&p| if p == 0 { 0 } else { (15 - p.leading_zeros() as usize) / 2 })
            .max()
            .unwrap_or(0)
    }

    fn product(&self, o: &Self, max_deg: usize) -> Option<Self> {
        let a: Vec<[u8; 8]> = self.0.iter().map(|&p| unpack(p)).collect();
        let b: Vec<[u8; 8]> = o.0.iter().map(|&p| unpack(p)).collect();
        let mut out = [0u16; 9];
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = [0u8; 16];
                for k in 0..3 {
                    let (x, y) = (&a[3 * i + k], &b[3 * k + j]);
                    if self.0[3 * i + k] == 0 || o.0[3 * k + j] == 0 {
                        continue;
                    }
                    for (p, &xp) in x.iter().enumerate().filter(|(_, &v)| v != 0) {
                        for (q, &yq) in y.iter().enumerate().filter(|(_, &v)| v != 0) {
                            acc[p + q] = (acc[p + q] + xp * yq) % 3;
                        }
                    }
                }
                out[3 * i + j] = pack(&acc, max_deg)?;
            }
        }
        Some(PackedU(out))
    }

    fn minor_poly(&self, r: [usize; 2], c: [usize; 2]) -> [u8; 16] {
        let e = |i: usize, j: usize| unpack(self.0[3 * i + j]);
        let mut acc = [0u8; 16];
        for (s, (x, y)) in [
            (1u8, (e(r[0], c[0]), e(r[1], c[1]))),
            (2u8, (e(r[0], c[1]), e(r[1], c[0]))),
        ] {
            for (p, &xp) in x.iter().enumerate().filter(|(_, &v)| v != 0) {
                for (q, &yq) in y.iter().enumerate().filter(|(_, &v)| v != 0) {
                    acc[p + q] = (acc[p + q] + s * xp * yq) % 3;
                }
            }
        }
        acc
    }
}

impl SearchElem for PackedU {
    /// Maximum `u`-degree of an entry (at most 7).
    type Bound = usize;

    fn mul(&self, o: &Self, bound: &usize) -> Option<Self> {
        self.product(o, (*bound).min(PACK_DEG))
    }

    /// Adjugate; valid for determinant 1.
    fn inverse(&self, bound: &usize) -> Option<Self> {
        let mut out = [0u16; 9];
        for i in 0..3 {
            for j in 0..3 {
                let r: Vec<usize> = (0..3).filter(|&x| x != j).collect();
                let c: Vec<usize> = (0..3).filter(|&x| x != i).collect();
                let mut m = self.minor_poly([r[0], r[1]], [c[0], c[1]]);
                if (i + j) % 2 == 1 {
                    m.iter_mut().for_each(|x| *x = (3 - *x) % 3);
                }
                out[3 * i + j] = pack(&m, (*bound).min(PACK_DEG))?;
            }
        }
        Some(PackedU(out))
    }

    fn is_identity(&self) -> bool {
        *self == PackedU::identity()
    }
}

/// Determinant-1 matrix over `Z[ω]` modulo the scalars `ω^k`, canonicalized
/// by choosing the least of `M`, `ωM`, `ω²M`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EisenProj(Mat3<Eisen>);

impl EisenProj {
    pub fn new(m: &Mat3<Eisen>) -> Result<Self, MatrepError> {
        Ok(EisenProj::canonical(normalize_psl(m)?.matrix))
    }

    pub fn matrix(&self) -> &Mat3<Eisen> {
        &self.0
    }

    fn key(m: &Mat3<Eisen>) -> Vec<(BigInt, BigInt)> {
        m.entries()
            .map(|x| (x.c0.numer().clone(), x.c1.numer().clone()))
            .collect()
    }

    fn canonical(m: Mat3<Eisen>) -> Self {
        let w = Eisen::omega();
        let m1 = m.scale(&w);
        let m2 = m1.scale(&w);
        let best = [m, m1, m2]
            .into_iter()
            .min_by_key(EisenProj::key)
            .expect("three candidates");
        EisenProj(best)
    }

    fn height(&self) -> BigInt {
        self.0
            .entries()
            .flat_map(|x| [x.c0.numer().abs(), x.c1.numer().abs()])
            .max()
            .unwrap_or_default()
    }
}

impl SearchElem for EisenProj {
    /// Maximum absolute value of an integer coordinate of an entry.
    type Bound = BigInt;

    fn mul(&self, o: &Self, bound: &BigInt) -> Option<Self> {
        let p = EisenProj::canonical(self.0.mul(&o.0));
        (p.height() <= *bound).then_some(p)
    }

    fn inverse(&self, bound: &BigInt) -> Option<Self> {
        let p = EisenProj::canonical(self.0.adjugate());
        (p.height() <= *bound).then_some(p)
    }

    fn is_identity(&self) -> bool {
        self.0.scalar_value().is_some()
    }
}

/// `E_ij(x)` with `x = u^power` (char 3) or `x = 3^power` (char 0); indices
/// are 1-based in text (`E13:u^2`, `E21:3`) and 0-based in the struct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ElementaryTarget {
    Identity,
    Elementary { i: usize, j: usize, power: u32 },
}

impl ElementaryTarget {
    /// The twelve char-3 targets `E_ij(u²)`, `E_ij(u³)`, `i ≠ j`.
    pub fn char3_defaults() -> Vec<ElementaryTarget> {
        let mut out = Vec::new();
        for power in [2, 3] {
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        out.push(ElementaryTarget::Elementary { i, j, power });
                    }
                }
            }
        }
        out
    }

    pub fn char3_matrix(&self) -> Mat3<RatFuncGf3> {
        match *self {
            ElementaryTarget::Identity => Mat3::identity(),
            ElementaryTarget::Elementary { i, j, power } => {
                Mat3::elementary(i, j, RatFuncGf3::monomial(1, 3 * power as i64))
            }
        }
    }

    pub fn char0_matrix(&self) -> Mat3<Eisen> {
        match *self {
            ElementaryTarget::Identity => Mat3::identity(),
            ElementaryTarget::Elementary { i, j, power } => {
                Mat3::elementary(i, j, Eisen::from_ints(3i64.pow(power), 0))
            }
        }
    }

    pub fn char3_format(&self) -> String {
        match *self {
            ElementaryTarget::Identity => "identity".into(),
            ElementaryTarget::Elementary { i, j, power } => {
                format!("E{}{}:u^{}", i + 1, j + 1, power)
            }
        }
    }
}

impl ElementaryTarget {
    pub fn char0_format(&self) -> String {
        match *self {
            ElementaryTarget::Identity => "identity".into(),
            ElementaryTarget::Elementary { i, j, power } => {
                format!("E{}{}:3^{}", i + 1, j + 1, power)
            }
        }
    }
}

impl fmt::Display for ElementaryTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.char3_format())
    }
}

impl FromStr for ElementaryTarget {
    type Err = MatrepError;

    fn from_str(s: &str) -> Result<Self, MatrepError> {
        let bad = || MatrepError::Invalid(format!("bad target {s:?}; expected e.g. E13:u^2, E12:3 or identity"));
        let s = s.trim();
        if s.eq_ignore_ascii_case("identity") {
            return Ok(ElementaryTarget::Identity);
        }
        let (head, val) = s.split_once(':').ok_or_else(bad)?;
        let idx = head.strip_prefix('E').ok_or_else(bad)?.as_bytes();
        if idx.len() != 2 {
            return Err(bad());
        }
        let digit = |b: u8| match b {
            b'1'..=b'3' => Ok((b - b'1') as usize),
            _ => Err(bad()),
        };
        let (i, j) = (digit(idx[0])?, digit(idx[1])?);
        if i == j {
            return Err(bad());
        }
        let power = match val.split_once('^') {
            Some((base, e)) if base == "u" || base == "3" => e.parse().map_err(|_| bad())?,
            None if val == "u" || val == "3" => 1,
            _ => return Err(bad()),
        };
        Ok(ElementaryTarget::Elementary { i, j, power })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchConfig {
    pub max_len: usize,
    /// Passed to the element type as its bound (u-degree in char 3).
    pub max_degree: usize,
    pub max_nodes: usize,
    /// Wall-clock limit; makes results timing-dependent when it triggers.
    pub budget_ms: Option<u64>,
    pub meet_in_middle: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_len: 12,
            max_degree: 4,
            max_nodes: 400_000,
            budget_ms: None,
            meet_in_middle: true,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: usize,
    pub depth: usize,
    pub node_limit_hit: bool,
    pub budget_hit: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found {
        target: ElementaryTarget,
        /// Letters `x1, x2, …` stand for the search generators.
        word_in_generators: Word,
        word: Word,
    },
    /// A candidate word that failed exact re-evaluation. Never expected.
    Rejected { target: ElementaryTarget, word: Word },
    NotFound { target: ElementaryTarget },
}

impl SearchOutcome {
    pub fn target(&self) -> ElementaryTarget {
        match self {
            SearchOutcome::Found { target, .. }
            | SearchOutcome::Rejected { target, .. }
            | SearchOutcome::NotFound { target } => *target,
        }
    }
}

struct Node<E> {
    elem: E,
    parent: u32,
    letter: i32,
}

fn word_of<E>(nodes: &[Node<E>], mut k: usize) -> Vec<i32> {
    let mut w = Vec::new();
    while k != 0 {
        w.push(nodes[k].letter);
        k = nodes[k].parent as usize;
    }
    w.reverse();
    w
}

fn shortlex_key(w: &[i32]) -> (usize, Vec<(u32, bool)>) {
    (w.len(), w.iter().map(|&l| (l.unsigned_abs(), l < 0)).collect())
}

/// Core search: returns, per target, the letters of a word in the generators
/// (`±(g+1)`), or `None`.
fn bfs<E: SearchElem>(
    gens: &[E],
    bound: &E::Bound,
    targets: &[E],
    cfg: &SearchConfig,
) -> (Vec<Option<Vec<i32>>>, SearchStats) {
    let start = Instant::now();
    let mut stats = SearchStats::default();
    let mut letters: Vec<(i32, E)> = Vec::new();
    for (g, e) in gens.iter().enumerate() {
        letters.push((g as i32 + 1, e.clone()));
        if let Some(inv) = e.inverse(bound) {
            letters.push((-(g as i32 + 1), inv));
        }
    }
    let id = targets
        .iter()
        .find(|t| t.is_identity())
        .cloned()
        .or_else(|| gens.first().and_then(|g| g.mul(&g.inverse(bound)?, bound)));
    let mut found: Vec<Option<Vec<i32>>> = targets
        .iter()
        .map(|t| t.is_identity().then(Vec::new))
        .collect();
    let Some(id) = id else {
        return (found, stats);
    };
    let mut nodes = vec![Node {
        elem: id.clone(),
        parent: 0,
        letter: 0,
    }];
    let mut index: FxHashMap<E, u32> = FxHashMap::default();
    index.insert(id, 0);
    let target_index: FxHashMap<&E, Vec<usize>> =
        targets.iter().enumerate().fold(FxHashMap::default(), |mut m, (k, t)| {
            m.entry(t).or_default().push(k);
            m
        });
    let (mut lo, mut hi) = (0usize, 1usize);
    let mut depth = 0;
    let bfs_depth = if cfg.meet_in_middle {
        cfg.max_len.div_ceil(2)
    } else {
        cfg.max_len
    };
    'levels: while depth < bfs_depth && lo < hi && found.iter().any(Option::is_none) {
        let level: Vec<Vec<(E, u32, i32)>> = (lo..hi)
            .into_par_iter()
            .map(|k| {
                let last = nodes[k].letter;
                letters
                    .iter()
                    .filter(|(l, _)| k == 0 || *l != -last)
                    .filter_map(|(l, g)| nodes[k].elem.mul(g, bound).map(|e| (e, k as u32, *l)))
                    .collect()
            })
            .collect();
        depth += 1;
        for (elem, parent, letter) in level.into_iter().flatten() {
            if index.contains_key(&elem) {
                continue;
            }
            if nodes.len() >= cfg.max_nodes {
                stats.node_limit_hit = true;
                break 'levels;
            }
            let k = nodes.len();
            if let Some(ts) = target_index.get(&elem) {
                for &t in ts {
                    if found[t].is_none() {
                        found[t] = Some(word_of_parts(&nodes, parent as usize, letter));
                    }
                }
            }
            index.insert(elem.clone(), k as u32);
            nodes.push(Node { elem, parent, letter });
        }
        lo = hi;
        hi = nodes.len();
        if cfg.budget_ms.is_some_and(|b| start.elapsed().as_millis() as u64 > b) {
            stats.budget_hit = true;
            break;
        }
    }
    stats.nodes = nodes.len();
    stats.depth = depth;
    if cfg.meet_in_middle {
        // T = x·y with x, y in the ball: look up x⁻¹·T
        let open: Vec<usize> = (0..targets.len()).filter(|&t| found[t].is_none()).collect();
        let hits: Vec<Vec<Option<Vec<i32>>>> = (0..nodes.len())
            .into_par_iter()
            .map(|k| {
                let Some(xi) = nodes[k].elem.inverse(bound) else {
                    return vec![None; open.len()];
                };
                open.iter()
                    .map(|&t| {
                        let y = xi.mul(&targets[t], bound)?;
                        let &j = index.get(&y)?;
                        let mut w = word_of(&nodes, k);
                        w.extend(word_of(&nodes, j as usize));
                        let reduced = Word::from_letters(w.iter().copied());
                        (reduced.len() == w.len() && w.len() <= cfg.max_len).then_some(w)
                    })
                    .collect()
            })
            .collect();
        for (n, &t) in open.iter().enumerate() {
            found[t] = hits
                .iter()
                .filter_map(|h| h[n].clone())
                .min_by_key(|w| shortlex_key(w));
        }
    }
    (found, stats)
}

fn word_of_parts<E>(nodes: &[Node<E>], parent: usize, letter: i32) -> Vec<i32> {
    let mut w = word_of(nodes, parent);
    w.push(letter);
    w
}

/// Searches all `targets` at once over words in `generators` (whose search
/// images are `gens`). Every candidate is re-checked with `verify`, which
/// receives the word in `a`, `b`; failures are reported as `Rejected`.
pub fn search_all<E, V>(
    gens: &[E],
    bound: &E::Bound,
    generators: &[Word],
    targets: &[(ElementaryTarget, E)],
    cfg: &SearchConfig,
    verify: V,
) -> (Vec<SearchOutcome>, SearchStats)
where
    E: SearchElem,
    V: Fn(&Word, &ElementaryTarget) -> bool,
{
    let elems: Vec<E> = targets.iter().map(|(_, e)| e.clone()).collect();
    let (found, stats) = bfs(gens, bound, &elems, cfg);
    let outcomes = targets
        .iter()
        .zip(found)
        .map(|((t, _), f)| match f {
            None => SearchOutcome::NotFound { target: *t },
            Some(letters) => {
                let in_gens = Word::from_letters(letters);
                let word = in_gens.substitute(generators);
                if verify(&word, t) {
                    SearchOutcome::Found {
                        target: *t,
                        word_in_generators: in_gens,
                        word,
                    }
                } else {
                    SearchOutcome::Rejected { target: *t, word }
                }
            }
        })
        .collect();
    (outcomes, stats)
}

/// Char-3 search: `ρ`-images of `generators` must lie in `SL₃(F₃[u])` with
/// `u`-degree at most 7; each found word is re-evaluated exactly under `ρ`.
pub fn elementary_word_search(
    rho: &super::WordEvaluator<RatFuncGf3>,
    generators: &[Word],
    targets: &[ElementaryTarget],
    cfg: &SearchConfig,
) -> Result<(Vec<SearchOutcome>, SearchStats), MatrepError> {
    let gens = generators
        .iter()
        .map(|w| {
            PackedU::from_mat(&rho.eval_word(w)).ok_or_else(|| {
                MatrepError::Invalid(format!("ρ({w}) is not in F₃[u] with degree ≤ {PACK_DEG}"))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let tgts = targets
        .iter()
        .map(|t| {
            PackedU::from_mat(&t.char3_matrix())
                .map(|p| (*t, p))
                .ok_or_else(|| MatrepError::Invalid(format!("target {t} exceeds degree {PACK_DEG}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let bound = cfg.max_degree.min(PACK_DEG);
    Ok(search_all(&gens, &bound, generators, &tgts, cfg, |w, t| {
        rho.eval_word(w) == t.char3_matrix()
    }))
}

/// Char-0 search over determinant-1 `Z[ω]` images (up to `ω^k`);
/// `verify` re-evaluates found words exactly.
pub fn elementary_word_search_char0<V>(
    images: &[Mat3<Eisen>],
    generators: &[Word],
    targets: &[ElementaryTarget],
    height: u64,
    cfg: &SearchConfig,
    verify: V,
) -> Result<(Vec<SearchOutcome>, SearchStats), MatrepError>
where
    V: Fn(&Word, &ElementaryTarget) -> bool,
{
    let gens = images
        .iter()
        .map(EisenProj::new)
        .collect::<Result<Vec<_>, _>>()?;
    let tgts = targets
        .iter()
        .map(|t| Ok((*t, EisenProj::new(&t.char0_matrix())?)))
        .collect::<Result<Vec<_>, MatrepError>>()?;
    Ok(search_all(&gens, &BigInt::from(height), generators, &tgts, cfg, verify))
}

/// Residue of a packed matrix mod `u`.
pub fn packed_residue(p: &PackedU) -> Mat3<Gf3> {
    Mat3::from_fn(|i, j| Gf3::new((p.0[3 * i + j] & 3) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rand_mat(seed: u64) -> Mat3<RatFuncGf3> {
        // product of elementary matrices with small u-polynomial entries
        let mut s = seed;
        let mut m = Mat3::identity();
        for _ in 0..3 {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let (i, j) = match (s >> 33) % 6 {
                0 => (0, 1),
                1 => (0, 2),
                2 => (1, 0),
                3 => (1, 2),
                4 => (2, 0),
                _ => (2, 1),
            };
            let c = PolyGf3::from_coeffs([(s >> 40) as i64 % 3, (s >> 45) as i64 % 3]);
            m = m.mul(&Mat3::elementary(i, j, RatFuncGf3::from_poly(c.expand_from_u())));
        }
        m
    }

    #[test]
    fn packed_agrees_with_exact() {
        for seed in 0..50 {
            let (x, y) = (rand_mat(seed), rand_mat(seed + 1000));
            let (px, py) = (PackedU::from_mat(&x).unwrap(), PackedU::from_mat(&y).unwrap());
            assert_eq!(px.to_mat(), x);
            assert_eq!(px.mul(&py, &7).unwrap().to_mat(), x.mul(&y));
            assert_eq!(px.inverse(&7).unwrap().to_mat(), x.inverse().unwrap());
        }
    }

    #[test]
    fn parse_targets() {
        let t: ElementaryTarget = "E13:u^2".parse().unwrap();
        assert_eq!(t, ElementaryTarget::Elementary { i: 0, j: 2, power: 2 });
        assert_eq!(t.to_string(), "E13:u^2");
        assert_eq!("identity".parse::<ElementaryTarget>().unwrap(), ElementaryTarget::Identity);
        assert!("E11:u".parse::<ElementaryTarget>().is_err());
        assert_eq!(ElementaryTarget::char3_defaults().len(), 12);
    }

    #[test]
    fn finds_known_product() {
        let gens = [
            Mat3::elementary(0, 1, RatFuncGf3::monomial(1, 3)),
            Mat3::elementary(1, 2, RatFuncGf3::monomial(1, 3)),
        ];
        let ev = super::super::WordEvaluator::unimodular(gens.to_vec(), super::super::EvalMode::Exact).unwrap();
        let generators = [Word::gen(0), Word::gen(1)];
        let cfg = SearchConfig {
            max_len: 4,
            ..SearchConfig::default()
        };
        let targets = [
            ElementaryTarget::Identity,
            ElementaryTarget::Elementary { i: 0, j: 2, power: 2 },
            ElementaryTarget::Elementary { i: 2, j: 0, power: 2 },
        ];
        let (out, _) = elementary_word_search(&ev, &generators, &targets, &cfg).unwrap();
        match &out[0] {
            SearchOutcome::Found { word, .. } => assert!(word.is_identity()),
            o => panic!("{o:?}"),
        }
        match &out[1] {
            SearchOutcome::Found { word, .. } => assert_eq!(word.to_string(), "a*b*a^-1*b^-1"),
            o => panic!("{o:?}"),
        }
        assert!(matches!(out[2], SearchOutcome::NotFound { .. }));
    }
}
