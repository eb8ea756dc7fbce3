use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::presentation::Presentation;

/// Dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    #[serde(serialize_with = "ser_entries")]
    pub entries: Vec<Vec<BigInt>>,
}

fn ser_entries<S: serde::Serializer>(e: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<Vec<String>> = e
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect();
    v.serialize(s)
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }
}

/// Diagonal of the Smith normal form plus the derived invariant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries `d₁ | d₂ | …`, all positive.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

/// Smith normal form by row/column reduction, pivoting on the entry of least
/// absolute value in the remaining block.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut a = m.entries.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pick the minimal nonzero |entry| in the block [t.., t..]
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        let mut clean = true;
        for i in t + 1..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].div_floor(&a[t][t]);
            for j in t..cols {
                let d = &q * &a[t][j];
                a[i][j] -= d;
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].div_floor(&a[t][t]);
            for i in t..rows {
                let d = &q * &a[i][t];
                a[i][j] -= d;
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            // a smaller remainder appeared in row/column t; re-pivot
            continue;
        }
        // divisibility: the pivot must divide the rest of the block
        let bad = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
        if let Some((i, _)) = bad {
            for j in t..cols {
                let x = a[i][j].clone();
                a[t][j] += x;
            }
            continue;
        }
        diagonal.push(a[t][t].abs());
        t += 1;
    }
    let rank = diagonal.len();
    SmithForm { diagonal, rank }
}

/// Relator exponent matrix: one row per relator, one column per generator.
pub fn relator_matrix(p: &Presentation) -> IntMatrix {
    let n = p.generator_count();
    let mut m = IntMatrix::zeros(p.relators.len(), n);
    for (i, r) in p.relators.iter().enumerate() {
        for (j, e) in r.exponent_sums(n).into_iter().enumerate() {
            m.entries[i][j] = BigInt::from(e);
        }
    }
    m
}

/// Invariant factors of the abelianization, in divisibility order, with `0`
/// for each free cyclic factor. Trivial factors `1` are dropped.
pub fn abelianization(p: &Presentation) -> Vec<BigInt> {
    let snf = smith_normal_form(&relator_matrix(p));
    let mut out: Vec<BigInt> = snf
        .diagonal
        .into_iter()
        .filter(|d| *d != BigInt::from(1))
        .collect();
    out.extend(std::iter::repeat(BigInt::zero()).take(p.generator_count() - snf.rank));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_snf() {
        let m = IntMatrix::from_i64(&[vec![3, 3], vec![6, -3]]);
        assert_eq!(smith_normal_form(&m).diagonal, ints(&[3, 9]));
    }

    #[test]
    fn gamma_abelianization() {
        let p = Presentation::gamma();
        let m = relator_matrix(&p);
        assert_eq!(m, IntMatrix::from_i64(&[vec![3, 3], vec![6, -3], vec![0, 0]]));
        assert_eq!(abelianization(&p), ints(&[3, 9]));
    }

    #[test]
    fn free_and_pol2() {
        let free = Presentation::new(vec!["a".into(), "b".into()], vec![]);
        assert_eq!(abelianization(&free), ints(&[0, 0]));
        assert_eq!(abelianization(&Presentation::pol2_c3()), ints(&[3, 3]));
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2, 3) ~ diag(1, 6)
        let m = IntMatrix::from_i64(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&m).diagonal, ints(&[1, 6]));
        let m = IntMatrix::from_i64(&[vec![4, 6, 0], vec![6, 9, 0], vec![0, 0, 0]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal, ints(&[1]));
        assert_eq!(s.rank, 1);
    }
}
