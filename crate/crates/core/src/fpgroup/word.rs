use std::fmt;

use serde::{Deserialize, Serialize};

/// Freely reduced word in a free group. Letter `g + 1` is generator `g`,
/// letter `-(g + 1)` its inverse.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: usize) -> Self {
        Word(vec![g as i32 + 1])
    }

    pub fn gen_inv(g: usize) -> Self {
        Word(vec![-(g as i32 + 1)])
    }

    /// Builds a word from raw letters, freely reducing them.
    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "letter 0 is not a generator");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used, plus one.
    pub fn generator_bound(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn mul(&self, rhs: &Word) -> Word {
        Word::from_letters(self.0.iter().chain(rhs.0.iter()).copied())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            out.extend_from_slice(&base.0);
        }
        Word::from_letters(out)
    }

    /// `by · self · by⁻¹`.
    pub fn conjugate(&self, by: &Word) -> Word {
        by.mul(self).mul(&by.inverse())
    }

    /// `[x, y] = x y x⁻¹ y⁻¹`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.mul(y).mul(&x.inverse()).mul(&y.inverse())
    }

    /// Removes matching letters from both ends until the word is cyclically
    /// reduced.
    pub fn cyclic_reduce(&self) -> Word {
        let l = &self.0;
        let (mut i, mut j) = (0usize, l.len());
        while j - i >= 2 && l[i] == -l[j - 1] {
            i += 1;
            j -= 1;
        }
        Word(l[i..j].to_vec())
    }

    /// Whether `self` and `other` are conjugate in the free group.
    pub fn is_conjugate_to(&self, other: &Word) -> bool {
        let a = self.cyclic_reduce();
        let b = other.cyclic_reduce();
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        let n = a.len();
        (0..n).any(|s| (0..n).all(|k| a.0[(s + k) % n] == b.0[k]))
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, generator_count: usize) -> Vec<i64> {
        let mut v = vec![0i64; generator_count];
        for &l in &self.0 {
            let g = l.unsigned_abs() as usize - 1;
            v[g] += l.signum() as i64;
        }
        v
    }

    /// Replaces generator `g` by `images[g]` and freely reduces.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Vec::new();
        for &l in &self.0 {
            let g = l.unsigned_abs() as usize - 1;
            if l > 0 {
                out.extend_from_slice(&images[g].0);
            } else {
                out.extend(images[g].0.iter().rev().map(|x| -x));
            }
        }
        Word::from_letters(out)
    }

    /// Renders the word with the given generator names, e.g. `b*a^-1*b`.
    pub fn format(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            let g = l.unsigned_abs() as usize - 1;
            let name = names.get(g).cloned().unwrap_or_else(|| format!("x{}", g + 1));
            let e = run as i64 * l.signum() as i64;
            parts.push(if e == 1 { name } else { format!("{name}^{e}") });
            i += run;
        }
        parts.join("*")
    }
}

/// Default names `a, b, c, …` used when a word is printed without context.
pub fn default_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("x{}", i + 1)
            }
        })
        .collect()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format(&default_names(self.generator_bound())))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Word {
        Word::gen(0)
    }
    fn b() -> Word {
        Word::gen(1)
    }

    #[test]
    fn free_reduction() {
        assert!(a().mul(&a().inverse()).is_identity());
        assert_eq!(a().mul(&b()).inverse(), Word::from_letters([-2, -1]));
        assert_eq!(Word::from_letters([1, 2, -2, -1, 1]), a());
    }

    #[test]
    fn commutator_orientation() {
        let x = b().mul(&a());
        let y = a().mul(&b().inverse()).mul(&a());
        let c = Word::commutator(&x, &y);
        assert_eq!(c.format(&default_names(2)), "b*a^2*b^-2*a^-1*b*a^-1");
    }

    #[test]
    fn cyclic_reduction_and_conjugacy() {
        let w = Word::from_letters([2, 1, 1, -2]);
        assert_eq!(w.cyclic_reduce(), a().pow(2));
        let r = b().mul(&a()).pow(3);
        let rot = a().mul(&b()).pow(3);
        assert!(r.is_conjugate_to(&rot));
        assert!(r.is_conjugate_to(&rot.conjugate(&Word::from_letters([1, 1, 2]))));
        assert!(!r.is_conjugate_to(&r.inverse()));
        assert!(!r.is_conjugate_to(&a().pow(6)));
    }

    #[test]
    fn substitution() {
        // a ↦ ba, b ↦ a⁻¹
        let imgs = [b().mul(&a()), a().inverse()];
        assert_eq!(
            a().mul(&b()).substitute(&imgs),
            b()
        );
    }

    #[test]
    fn formatting() {
        let w = Word::from_letters([1, 1, -2, 1]);
        assert_eq!(w.to_string(), "a^2*b^-1*a");
        assert_eq!(Word::identity().to_string(), "1");
    }
}
