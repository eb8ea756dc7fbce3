use serde::Serialize;

use super::evaluator::WordEvaluator;
use super::mat3::Mat3;
use super::MatrepError;
use crate::exactfields::{u_valuation, RatFuncGf3, Valuation};
use crate::fpgroup::Word;

#[derive(Clone, Debug, Serialize)]
pub struct NilpotencyWitness {
    pub n: u32,
    /// Greatest number of entries `d` such that some `[x₁,[x₂,…,x_d]]` is
    /// nontrivial mod `uⁿ` (0 if none was found).
    pub depth: usize,
    pub witness: Vec<Word>,
    /// Least `u`-valuation of `C − I` for the witness commutator `C`.
    pub witness_valuation: Option<i64>,
    /// Commutators with `n` entries (from the first few words) that were
    /// checked to vanish mod `uⁿ`.
    pub deeper_checked: usize,
    pub deeper_all_trivial: bool,
}

fn level(m: &Mat3<RatFuncGf3>) -> Result<Valuation, MatrepError> {
    let d = m.sub(&Mat3::identity());
    let mut v = Valuation::Infinite;
    for x in d.entries() {
        v = v.min(u_valuation(x)?);
    }
    Ok(v)
}

fn nested(ms: &[(Mat3<RatFuncGf3>, Mat3<RatFuncGf3>)], idx: &[usize]) -> Mat3<RatFuncGf3> {
    let (last, rest) = idx.split_last().expect("nonempty");
    let (mut c, mut ci) = ms[*last].clone();
    for &k in rest.iter().rev() {
        let (x, xi) = &ms[k];
        c = Mat3::commutator(x, xi, &c, &ci);
        ci = c.adjugate();
    }
    c
}

fn tuples(pool: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = pool.pow(len as u32);
    (0..total).map(move |mut k| {
        let mut t = vec![0; len];
        for x in t.iter_mut().rev() {
            *x = k % pool;
            k /= pool;
        }
        t
    })
}

/// Finds nested commutators of `ρ`-images of `level_words` (which must be
/// `≡ I mod u`) that survive mod `uⁿ`. Since `[level i, level j] ⊆ level i+j`,
/// at most `n − 1` entries can survive. A surviving commutator with `n − 1`
/// entries is a nontrivial commutator of weight `n − 1` in the image mod `uⁿ`.
/// Tuples are drawn from the first `pool` words in lexicographic order.
pub fn nilpotency_witness(
    ev: &WordEvaluator<RatFuncGf3>,
    level_words: &[Word],
    n: u32,
    pool: usize,
) -> Result<NilpotencyWitness, MatrepError> {
    let pool = pool.min(level_words.len());
    let mut ms = Vec::with_capacity(pool);
    for w in &level_words[..pool] {
        let m = ev.eval_word(w);
        if !level(&m)?.at_least(1) {
            return Err(MatrepError::Level(format!("ρ({w}) is not ≡ I mod u")));
        }
        let mi = m.adjugate();
        ms.push((m, mi));
    }
    let mut out = NilpotencyWitness {
        n,
        depth: 0,
        witness: Vec::new(),
        witness_valuation: None,
        deeper_checked: 0,
        deeper_all_trivial: true,
    };
    'depth: for d in (1..n as usize).rev() {
        for t in tuples(pool, d) {
            let c = nested(&ms, &t);
            let v = level(&c)?;
            if !v.at_least(n as i64) {
                out.depth = d;
                out.witness = t.iter().map(|&k| level_words[k].clone()).collect();
                out.witness_valuation = v.finite();
                break 'depth;
            }
        }
    }
    let small = pool.min(4);
    for t in tuples(small, n as usize) {
        out.deeper_checked += 1;
        if !level(&nested(&ms, &t))?.at_least(n as i64) {
            out.deeper_all_trivial = false;
        }
    }
    Ok(out)
}
