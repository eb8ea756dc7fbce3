//! Randomized property suites shared by `properties` and `acceptance`.

#![allow(dead_code)]

use polcert_core::exactfields::{Eisen, Field, Gf3, PolyGf3, RatFuncGf3, Rat, Ring, Tower};
use polcert_core::fpgroup::{reidemeister_schreier, Word};
use polcert_core::matrep::{
    descend_and_normalize, graded_weight, grading_consistent, kernel_words, level0_char0,
    level0_char3, level1_log_char0, level1_log_char3, mu, pi_generators, rho_generators,
};
use polcert_core::polymap::FiniteGroup;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const CASES: u32 = 10_000;

fn run<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn rat() -> impl Strategy<Value = Rat> {
    (-60i64..60, 1i64..40).prop_map(|(n, d)| Rat::new(n, d).unwrap())
}

fn eisen() -> impl Strategy<Value = Eisen> {
    (rat(), rat()).prop_map(|(a, b)| Eisen::new(a, b))
}

fn tower() -> impl Strategy<Value = Tower> {
    (eisen(), eisen(), eisen()).prop_map(|(a, b, c)| Tower::new(a, b, c))
}

fn gf3() -> impl Strategy<Value = Gf3> {
    (0i64..3).prop_map(Gf3::new)
}

fn ratfunc() -> impl Strategy<Value = RatFuncGf3> {
    let poly = prop::collection::vec(0i64..3, 0..6);
    (poly.clone(), poly).prop_map(|(n, mut d)| {
        d.push(1);
        RatFuncGf3::new(PolyGf3::from_coeffs(n), PolyGf3::from_coeffs(d)).unwrap()
    })
}

fn axioms<F: Field>((a, b, c): (F, F, F)) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.add(&b.add(&c)), a.add(&b).add(&c));
    prop_assert_eq!(a.mul(&b.mul(&c)), a.mul(&b).mul(&c));
    prop_assert_eq!(a.add(&b), b.add(&a));
    prop_assert_eq!(a.mul(&b), b.mul(&a));
    prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    prop_assert_eq!(a.add(&F::zero()), a.clone());
    prop_assert_eq!(a.mul(&F::one()), a.clone());
    prop_assert!(a.sub(&a).is_zero());
    if a.is_zero() {
        prop_assert!(a.inv().is_err());
    } else {
        prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        prop_assert_eq!(b.mul(&a).div(&a).unwrap(), b);
    }
    Ok(())
}

pub fn field_axioms() -> Result<(), String> {
    run((rat(), rat(), rat()), axioms)?;
    run((eisen(), eisen(), eisen()), axioms)?;
    run((tower(), tower(), tower()), axioms)?;
    run((gf3(), gf3(), gf3()), axioms)?;
    run((ratfunc(), ratfunc(), ratfunc()), axioms)
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(vec![1, -1, 2, -2]), 0..=max_len)
        .prop_map(Word::from_letters)
}

pub fn eval_homomorphism() -> Result<(), String> {
    let rho = rho_generators().map_err(|e| e.to_string())?;
    run((word(12), word(12)), |(u, v)| {
        let uv = rho.eval_word(&u.mul(&v));
        prop_assert_eq!(uv, rho.eval_word(&u).mul(&rho.eval_word(&v)));
        prop_assert!(rho.eval_word(&u.mul(&u.inverse())).is_identity());
        Ok(())
    })?;
    let pi = pi_generators().map_err(|e| e.to_string())?;
    run((word(8), word(8)), |(u, v)| {
        let uv = pi.eval_word(&u.mul(&v));
        prop_assert_eq!(uv, pi.eval_word(&u).mul(&pi.eval_word(&v)));
        prop_assert!(pi.eval_word(&u).mul(&pi.eval_word(&u.inverse())).is_identity());
        Ok(())
    })
}

pub fn grading() -> Result<(), String> {
    let pi = pi_generators().map_err(|e| e.to_string())?;
    run(word(10), |w| {
        prop_assert!(grading_consistent(&pi.eval_word(&w), &w), "{}", w);
        let d = graded_weight(&w).rem_euclid(3);
        prop_assert_eq!((3 - d) % 3, mu(&w) as i64, "{}", w);
        // μ is the homomorphism a ↦ 1, b ↦ 2 to Z/3
        let sums = w.exponent_sums(2);
        prop_assert_eq!(mu(&w) as i64, (sums[0] + 2 * sums[1]).rem_euclid(3));
        Ok(())
    })
}

fn product(gens: &[Word], picks: &[(usize, bool)]) -> Word {
    picks.iter().fold(Word::identity(), |acc, &(i, inv)| {
        let g = &gens[i % gens.len()];
        acc.mul(&if inv { g.inverse() } else { g.clone() })
    })
}

fn picks() -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..1000, any::<bool>()), 1..4)
}

pub fn level1_traces() -> Result<(), String> {
    let schreier = reidemeister_schreier(2, &FiniteGroup::cyclic(3), &[1, 2])
        .map_err(|e| e.to_string())?
        .schreier_generators;

    let rho = rho_generators().map_err(|e| e.to_string())?;
    let l0: Vec<_> = schreier
        .iter()
        .map(|w| level0_char3(&rho.eval_word(w)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let k3 = kernel_words(&schreier, &l0, 10_000).map_err(|e| e.to_string())?.words;
    run(picks(), |p| {
        let w = product(&k3, &p);
        let x = level1_log_char3(&rho.eval_word(&w)).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(x.trace().is_zero());
        Ok(())
    })?;

    let pi = pi_generators().map_err(|e| e.to_string())?;
    let l0: Vec<_> = schreier
        .iter()
        .map(|w| descend_and_normalize(&pi.eval_word(w), w).and_then(|n| level0_char0(&n.matrix)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let k0 = kernel_words(&schreier, &l0, 10_000).map_err(|e| e.to_string())?.words;
    run(picks(), |p| {
        let w = product(&k0, &p);
        let n = descend_and_normalize(&pi.eval_word(&w), &w).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let x = level1_log_char0(&n.matrix).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(x.trace().is_zero());
        Ok(())
    })
}
