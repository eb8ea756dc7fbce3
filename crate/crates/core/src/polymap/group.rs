use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;

use super::PolymapError;
use crate::fpgroup::Word;

/// Finite group given by its full multiplication table. Element 0 is not
/// required to be the identity; `identity` records it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// Orders up to this bound get a full associativity check.
const FULL_ASSOC_CHECK: usize = 64;

impl FiniteGroup {
    /// Builds and validates a group from a multiplication table.
    pub fn from_table(
        name: impl Into<String>,
        table: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, PolymapError> {
        let n = table.len();
        let bad = |m: String| Err(PolymapError::InvalidGroup(m));
        if n == 0 {
            return bad("empty table".into());
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return bad(format!("row {i} has length {} (expected {n})", row.len()));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return bad(format!("row {i} contains out-of-range entry {x}"));
            }
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return bad(format!("{} labels for {n} elements", l.len()));
            }
        }
        let identity = match (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        {
            Some(e) => e,
            None => return bad("no two-sided identity".into()),
        };
        let mut inverse = vec![0; n];
        for x in 0..n {
            match (0..n).find(|&y| table[x][y] == identity && table[y][x] == identity) {
                Some(y) => inverse[x] = y,
                None => return bad(format!("element {x} has no inverse")),
            }
        }
        let check = |x: usize, y: usize, z: usize| table[table[x][y]][z] == table[x][table[y][z]];
        if n <= FULL_ASSOC_CHECK {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !check(x, y, z) {
                            return bad(format!("associativity fails at ({x}, {y}, {z})"));
                        }
                    }
                }
            }
        } else {
            // deterministic sample: a linear congruential walk over triples
            let mut s: u64 = 0x9e37_79b9_7f4a_7c15;
            for _ in 0..20_000 {
                s = s.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
                let x = (s >> 33) as usize % n;
                let y = (s >> 17) as usize % n;
                let z = (s >> 5) as usize % n;
                if !check(x, y, z) {
                    return bad(format!("associativity fails at ({x}, {y}, {z})"));
                }
            }
        }
        Ok(FiniteGroup {
            name: name.into(),
            table,
            identity,
            inverse,
            labels,
        })
    }

    /// Closure of `gens` under `mul`, in breadth-first order starting from the
    /// identity (right multiplication by generators in the given order).
    /// Returns the group and the element list.
    pub fn from_closure<T, F>(
        name: impl Into<String>,
        identity: T,
        gens: &[T],
        mul: F,
        limit: usize,
    ) -> Result<(Self, Vec<T>), PolymapError>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut k = 0;
        while k < elems.len() {
            for g in gens {
                let p = mul(&elems[k], g);
                if !index.contains_key(&p) {
                    if elems.len() >= limit {
                        return Err(PolymapError::Guard {
                            needed: elems.len() as u128 + 1,
                            limit: limit as u128,
                        });
                    }
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            k += 1;
        }
        let n = elems.len();
        let mut table = vec![vec![0; n]; n];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                table[i][j] = *index
                    .get(&mul(x, y))
                    .ok_or_else(|| PolymapError::InvalidGroup("closure not closed".into()))?;
            }
        }
        Ok((FiniteGroup::from_table(name, table, None)?, elems))
    }

    /// Permutation group on `{0, …, degree−1}` generated by `gens`
    /// (`p[i]` is the image of `i`; products act left-to-right, `(pq)(i) = q(p(i))`).
    pub fn from_permutations(
        name: impl Into<String>,
        degree: usize,
        gens: &[Vec<usize>],
    ) -> Result<Self, PolymapError> {
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(PolymapError::InvalidGroup(format!(
                    "{g:?} is not a permutation of degree {degree}"
                )));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let (mut g, elems) = FiniteGroup::from_closure(
            name,
            id,
            gens,
            |p, q| p.iter().map(|&i| q[i]).collect::<Vec<usize>>(),
            1 << 20,
        )?;
        g.labels = Some(elems.iter().map(|p| cycle_notation(p)).collect());
        Ok(g)
    }

    pub fn trivial() -> Self {
        FiniteGroup::from_table("1", vec![vec![0]], None).expect("trivial group")
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let labels = (0..n).map(|i| i.to_string()).collect();
        FiniteGroup::from_table(format!("C{n}"), table, Some(labels)).expect("cyclic group")
    }

    /// `G × H`, element `(g, h)` stored at index `g·|H| + h`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (m, n) = (g.order(), h.order());
        let table = (0..m * n)
            .map(|x| {
                (0..m * n)
                    .map(|y| g.mul(x / n, y / n) * n + h.mul(x % n, y % n))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(format!("{}x{}", g.name, h.name), table, None)
            .expect("direct product")
    }

    /// `C_n ⋊ C_m` where the generator of `C_m` acts by `x ↦ x^k`; requires
    /// `k^m ≡ 1 mod n`. Element `(x, y)` stored at `y·n + x`.
    pub fn metacyclic(n: usize, m: usize, k: usize) -> Result<Self, PolymapError> {
        let kp = |e: usize| (0..e).fold(1usize, |acc, _| acc * k % n);
        if kp(m) != 1 % n {
            return Err(PolymapError::InvalidGroup(format!(
                "{k}^{m} is not 1 mod {n}"
            )));
        }
        // (x1, y1)(x2, y2) = (x1 + k^{y1} x2, y1 + y2)
        let table = (0..n * m)
            .map(|a| {
                let (x1, y1) = (a % n, a / n);
                (0..n * m)
                    .map(|b| {
                        let (x2, y2) = (b % n, b / n);
                        ((y1 + y2) % m) * n + (x1 + kp(y1) * x2) % n
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(format!("C{n}:C{m}"), table, None)
    }

    /// Heisenberg group of upper unitriangular 3×3 matrices over `Z/p`.
    /// Element `(x, y, z)` ↔ `[[1, x, z], [0, 1, y], [0, 0, 1]]`.
    pub fn heisenberg(p: usize) -> Self {
        let enc = |x: usize, y: usize, z: usize| (x * p + y) * p + z;
        let n = p * p * p;
        let table = (0..n)
            .map(|a| {
                let (x1, y1, z1) = (a / (p * p), (a / p) % p, a % p);
                (0..n)
                    .map(|b| {
                        let (x2, y2, z2) = (b / (p * p), (b / p) % p, b % p);
                        enc((x1 + x2) % p, (y1 + y2) % p, (z1 + z2 + x1 * y2) % p)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(format!("Heis{n}"), table, None).expect("heisenberg group")
    }

    /// `S₃` as permutations of `{1, 2, 3}`.
    pub fn symmetric3() -> Self {
        FiniteGroup::from_permutations("S3", 3, &[vec![1, 2, 0], vec![1, 0, 2]])
            .expect("S3")
            .renamed("S3")
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => format!("g{x}"),
        }
    }

    pub fn pow(&self, x: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(x) } else { x };
        (0..e.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, x| num_integer::lcm(acc, self.element_order(x)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Evaluates `w` with generator `g` sent to `images[g]`.
    pub fn eval_word(&self, w: &Word, images: &[usize]) -> usize {
        w.letters().iter().fold(self.identity, |acc, &l| {
            let g = images[l.unsigned_abs() as usize - 1];
            self.mul(acc, if l > 0 { g } else { self.inv(g) })
        })
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order()).filter(|&x| seen[x]).collect()
    }
}

/// Cycle notation with points numbered from 1, e.g. `(1 2 3)`; `()` for the
/// identity.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        let mut cyc = vec![s + 1];
        seen[s] = true;
        let mut x = p[s];
        while x != s {
            seen[x] = true;
            cyc.push(x + 1);
            x = p[x];
        }
        let parts: Vec<String> = cyc.iter().map(usize::to_string).collect();
        out.push_str(&format!("({})", parts.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// Parses a group file. Two formats:
///
/// ```text
/// order 2
/// 0 1
/// 1 0
/// ```
///
/// and
///
/// ```text
/// perm 3
/// (1 2 3)
/// (1 2)
/// ```
///
/// Blank lines and `#` comments are ignored.
pub fn parse_group(name: &str, text: &str) -> Result<FiniteGroup, PolymapError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let err = |line: usize, message: String| PolymapError::Parse { line, message };
    let Some(&(hline, header)) = lines.first() else {
        return Err(err(1, "empty group file".into()));
    };
    let mut head = header.split_whitespace();
    let kind = head.next().unwrap_or("");
    let n: usize = head
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| err(hline, format!("expected `order n` or `perm n`, found `{header}`")))?;
    if head.next().is_some() {
        return Err(err(hline, "trailing tokens in header".into()));
    }
    match kind {
        "order" => {
            let body = &lines[1..];
            if body.len() != n {
                return Err(err(
                    body.last().map_or(hline, |l| l.0),
                    format!("expected {n} table rows, found {}", body.len()),
                ));
            }
            let mut table = Vec::with_capacity(n);
            for &(ln, l) in body {
                let row: Result<Vec<usize>, _> = l.split_whitespace().map(str::parse).collect();
                let row = row.map_err(|e| err(ln, format!("bad entry: {e}")))?;
                if row.len() != n {
                    return Err(err(ln, format!("expected {n} entries, found {}", row.len())));
                }
                if let Some(x) = row.iter().find(|&&x| x >= n) {
                    return Err(err(ln, format!("entry {x} outside 0..{n}")));
                }
                table.push(row);
            }
            FiniteGroup::from_table(name, table, None)
        }
        "perm" => {
            let mut gens = Vec::new();
            for &(ln, l) in &lines[1..] {
                gens.push(parse_cycles(l, n).map_err(|m| err(ln, m))?);
            }
            FiniteGroup::from_permutations(name, n, &gens)
        }
        _ => Err(err(hline, format!("unknown group format `{kind}`"))),
    }
}

fn parse_cycles(s: &str, n: usize) -> Result<Vec<usize>, String> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut rest = s.trim();
    let mut moved = vec![false; n];
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('(')
            .ok_or_else(|| format!("expected `(` at `{rest}`"))?;
        let close = inner.find(')').ok_or("unclosed cycle")?;
        let pts: Result<Vec<usize>, _> = inner[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(str::parse::<usize>)
            .collect();
        let pts = pts.map_err(|e| format!("bad point: {e}"))?;
        for &x in &pts {
            if x == 0 || x > n {
                return Err(format!("point {x} outside 1..={n}"));
            }
            if std::mem::replace(&mut moved[x - 1], true) {
                return Err(format!("point {x} appears twice"));
            }
        }
        for k in 0..pts.len() {
            p[pts[k] - 1] = pts[(k + 1) % pts.len()] - 1;
        }
        rest = inner[close + 1..].trim_start();
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        assert_eq!(FiniteGroup::symmetric3().order(), 6);
        assert!(!FiniteGroup::symmetric3().is_abelian());
        let m = FiniteGroup::metacyclic(9, 3, 4).unwrap();
        assert_eq!((m.order(), m.exponent()), (27, 9));
        let h = FiniteGroup::heisenberg(3);
        assert_eq!((h.order(), h.exponent()), (27, 3));
        let p = FiniteGroup::direct_product(&FiniteGroup::cyclic(9), &FiniteGroup::cyclic(3));
        assert_eq!((p.order(), p.exponent()), (27, 9));
        assert!(p.is_abelian());
        assert!(FiniteGroup::metacyclic(9, 3, 2).is_err());
    }

    #[test]
    fn table_validation() {
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroup::from_table("x", bad, None).is_err());
        let nonassoc = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 2, 0]];
        assert!(FiniteGroup::from_table("x", nonassoc, None).is_err());
    }

    #[test]
    fn parse_both_formats() {
        let s3 = parse_group("S3", "perm 3\n(1 2 3)\n(1 2)\n").unwrap();
        assert_eq!(s3.order(), 6);
        let c2 = parse_group("C2", "# cyclic\norder 2\n0 1\n1 0\n").unwrap();
        assert_eq!(c2.order(), 2);
        match parse_group("x", "order 2\n0 1\n1 x\n") {
            Err(PolymapError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse_group("x", "perm 3\n(1 4)\n").is_err());
    }

    #[test]
    fn labels() {
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(s3.label(s3.identity()), "()");
        assert_eq!(cycle_notation(&[1, 2, 0]), "(1 2 3)");
    }
}
