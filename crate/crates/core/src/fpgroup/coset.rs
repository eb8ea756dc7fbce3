//! HLT coset enumeration with lookahead.

use serde::Serialize;

use super::presentation::Presentation;
use super::word::Word;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CosetStatus {
    Complete,
    /// The coset limit was reached; the index is unknown (possibly infinite).
    Overflowed,
}

/// Coset table. Column `2g` is the action of generator `g`, column `2g + 1`
/// the action of its inverse. On completion the table is standardized.
#[derive(Debug, Clone, Serialize)]
pub struct CosetTable {
    pub status: CosetStatus,
    pub rows: Vec<Vec<usize>>,
    /// Largest number of simultaneously live cosets during the run.
    pub max_live: usize,
    /// Total number of coset definitions made.
    pub defined: usize,
}

impl CosetTable {
    pub fn index(&self) -> Option<usize> {
        match self.status {
            CosetStatus::Complete => Some(self.rows.len()),
            CosetStatus::Overflowed => None,
        }
    }

    /// Image of coset `c` under `w`.
    pub fn act(&self, c: usize, w: &Word) -> usize {
        w.letters().iter().fold(c, |c, &l| self.rows[c][column(l)])
    }

    /// Permutation of the cosets induced by generator `g`.
    pub fn generator_permutation(&self, g: usize) -> Vec<usize> {
        self.rows.iter().map(|r| r[2 * g]).collect()
    }

    /// Exhaustive consistency check of a complete table: every relator fixes
    /// every coset, every subgroup generator fixes coset 0, and each generator
    /// column is a permutation inverse to its partner column.
    pub fn verify(&self, p: &Presentation, subgroup: &[Word]) -> bool {
        if self.status != CosetStatus::Complete {
            return false;
        }
        let n = self.rows.len();
        for (c, row) in self.rows.iter().enumerate() {
            for g in 0..p.generator_count() {
                let (fw, bw) = (row[2 * g], row[2 * g + 1]);
                if fw >= n || bw >= n || self.rows[fw][2 * g + 1] != c || self.rows[bw][2 * g] != c
                {
                    return false;
                }
            }
        }
        (0..n).all(|c| p.relators.iter().all(|r| self.act(c, r) == c))
            && subgroup.iter().all(|h| self.act(0, h) == 0)
    }
}

fn column(letter: i32) -> usize {
    let g = letter.unsigned_abs() as usize - 1;
    if letter > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

fn inverse_column(col: usize) -> usize {
    col ^ 1
}

struct Enumerator {
    ncols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    live: usize,
    max_live: usize,
    defined: usize,
    limit: usize,
    queue: Vec<usize>,
}

impl Enumerator {
    fn new(ncols: usize, limit: usize) -> Self {
        Enumerator {
            ncols,
            table: vec![vec![NONE; ncols]],
            parent: vec![0],
            live: 1,
            max_live: 1,
            defined: 1,
            limit,
            queue: Vec::new(),
        }
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = c;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn define(&mut self, c: usize, col: usize) -> bool {
        if self.live >= self.limit {
            return false;
        }
        let d = self.table.len();
        self.table.push(vec![NONE; self.ncols]);
        self.parent.push(d);
        self.table[c][col] = d;
        self.table[d][inverse_column(col)] = c;
        self.live += 1;
        self.defined += 1;
        self.max_live = self.max_live.max(self.live);
        true
    }

    fn merge(&mut self, a: usize, b: usize) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill] = keep;
        self.live -= 1;
        self.queue.push(kill);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for col in 0..self.ncols {
                let target = self.table[dead][col];
                if target == NONE {
                    continue;
                }
                let icol = inverse_column(col);
                if self.table[target][icol] == dead {
                    self.table[target][icol] = NONE;
                }
                let mu = self.rep(dead);
                let nu = self.rep(target);
                if self.table[mu][col] != NONE {
                    let other = self.table[mu][col];
                    self.merge(nu, other);
                } else if self.table[nu][icol] != NONE {
                    let other = self.table[nu][icol];
                    self.merge(mu, other);
                } else {
                    self.table[mu][col] = nu;
                    self.table[nu][icol] = mu;
                }
            }
        }
    }

    /// Scans `c` under `w`, defining new cosets when `define` is set. Returns
    /// false if a definition was needed but the limit was hit.
    fn scan(&mut self, c: usize, w: &[usize], define: bool) -> bool {
        if w.is_empty() {
            return true;
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.table[f][w[i]] != NONE {
                f = self.table[f][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return true;
            }
            while j >= i as isize && self.table[b][inverse_column(w[j as usize])] != NONE {
                b = self.table[b][inverse_column(w[j as usize])];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return true;
            }
            if i as isize == j {
                self.table[f][w[i]] = b;
                self.table[b][inverse_column(w[i])] = f;
                return true;
            }
            if !define {
                return true;
            }
            if !self.define(f, w[i]) {
                return false;
            }
        }
    }

    /// Lookahead: scans every live coset under every relator without making
    /// definitions.
    fn lookahead(&mut self, rels: &[Vec<usize>]) {
        let mut c = 0;
        while c < self.table.len() {
            if self.is_live(c) {
                for r in rels {
                    if !self.is_live(c) {
                        break;
                    }
                    self.scan(c, r, false);
                }
            }
            c += 1;
        }
    }

    fn standardize(&mut self) -> Vec<Vec<usize>> {
        let mut order = vec![0usize];
        let mut new_index = vec![NONE; self.table.len()];
        new_index[0] = 0;
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            k += 1;
            for col in 0..self.ncols {
                let d = self.table[c][col];
                if new_index[d] == NONE {
                    new_index[d] = order.len();
                    order.push(d);
                }
            }
        }
        order
            .iter()
            .map(|&c| self.table[c].iter().map(|&d| new_index[d]).collect())
            .collect()
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the group
/// presented by `p`, allowing at most `max_cosets` live cosets.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> CosetTable {
    assert!(max_cosets >= 1, "coset limit must be positive");
    let ncols = 2 * p.generator_count();
    let rels: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|r| r.letters().iter().map(|&l| column(l)).collect())
        .collect();
    let subs: Vec<Vec<usize>> = subgroup
        .iter()
        .map(|h| h.letters().iter().map(|&l| column(l)).collect())
        .collect();
    let mut e = Enumerator::new(ncols, max_cosets);
    let overflow = |e: &Enumerator| CosetTable {
        status: CosetStatus::Overflowed,
        rows: Vec::new(),
        max_live: e.max_live,
        defined: e.defined,
    };

    if ncols == 0 {
        return CosetTable {
            status: CosetStatus::Complete,
            rows: vec![Vec::new()],
            max_live: 1,
            defined: 1,
        };
    }

    for h in &subs {
        if !e.scan(0, h, true) {
            e.lookahead(&rels);
            if !e.scan(0, h, true) {
                return overflow(&e);
            }
        }
    }

    let mut c = 0;
    while c < e.table.len() {
        for r in &rels {
            if !e.is_live(c) {
                break;
            }
            if !e.scan(c, r, true) {
                e.lookahead(&rels);
                if !e.is_live(c) || !e.scan(c, r, true) {
                    if e.is_live(c) {
                        return overflow(&e);
                    }
                    break;
                }
            }
        }
        if e.is_live(c) {
            for col in 0..ncols {
                if e.table[c][col] == NONE && !e.define(c, col) {
                    e.lookahead(&rels);
                    if e.is_live(c) && e.table[c][col] == NONE && !e.define(c, col) {
                        return overflow(&e);
                    }
                }
                if !e.is_live(c) {
                    break;
                }
            }
        }
        c += 1;
    }

    let rows = e.standardize();
    CosetTable {
        status: CosetStatus::Complete,
        rows,
        max_live: e.max_live,
        defined: e.defined,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pol2_has_order_27() {
        let p = Presentation::pol2_c3();
        let t = todd_coxeter(&p, &[], 10_000);
        assert_eq!(t.index(), Some(27));
        assert!(t.verify(&p, &[]));
    }

    #[test]
    fn trivial_group() {
        let p = Presentation::parse("gens: a\nrels: a").unwrap();
        let t = todd_coxeter(&p, &[], 10);
        assert_eq!(t.index(), Some(1));
    }

    #[test]
    fn c3_times_c3() {
        let p = Presentation::parse("gens: a b\nrels: a^3, b^3, [a,b]").unwrap();
        let t = todd_coxeter(&p, &[], 100);
        assert_eq!(t.index(), Some(9));
        assert!(t.verify(&p, &[]));
    }

    #[test]
    fn subgroup_index() {
        // S₃ = ⟨a, b | a³, b², (ab)²⟩, ⟨b⟩ has index 3
        let p = Presentation::parse("gens: a b\nrels: a^3, b^2, (a*b)^2").unwrap();
        let h = [p.parse_word("b").unwrap()];
        let t = todd_coxeter(&p, &h, 100);
        assert_eq!(t.index(), Some(3));
        assert!(t.verify(&p, &h));
    }

    #[test]
    fn gamma_mod_mu_kernel_has_index_3() {
        let p = Presentation::gamma();
        let h: Vec<Word> = ["a^3", "b*a", "a*b", "a^-1*b*a^-1"]
            .iter()
            .map(|s| p.parse_word(s).unwrap())
            .collect();
        let t = todd_coxeter(&p, &h, 1000);
        assert_eq!(t.index(), Some(3));
    }

    #[test]
    fn infinite_group_overflows() {
        let p = Presentation::parse("gens: a b\nrels: [a,b]").unwrap();
        let t = todd_coxeter(&p, &[], 500);
        assert_eq!(t.status, CosetStatus::Overflowed);
        assert_eq!(t.index(), None);
    }

    #[test]
    fn standardized_output_is_deterministic() {
        let p = Presentation::pol2_c3();
        let t1 = todd_coxeter(&p, &[], 10_000);
        let t2 = todd_coxeter(&p, &[], 10_000);
        assert_eq!(t1.rows, t2.rows);
        assert_eq!(t1.rows[0][0], 1);
    }
}
