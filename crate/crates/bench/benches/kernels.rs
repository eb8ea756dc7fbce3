use criterion::{black_box, criterion_group, criterion_main, Criterion};
use polcert_core::fpgroup::{reidemeister_schreier, todd_coxeter, Presentation, Word};
use polcert_core::matrep::{
    elementary_word_search, kernel_words, level0_char3, level1_log_char3, level1_span,
    rho_generators, Ambient, ElementaryTarget, PackedU, SearchConfig, SearchElem,
};
use polcert_core::polymap::FiniteGroup;

fn schreier() -> Vec<Word> {
    reidemeister_schreier(2, &FiniteGroup::cyclic(3), &[1, 2])
        .unwrap()
        .schreier_generators
}

fn coset_enumeration(c: &mut Criterion) {
    let pol2 = Presentation::pol2_c3();
    c.bench_function("todd_coxeter pol2", |b| {
        b.iter(|| todd_coxeter(black_box(&pol2), &[], 100_000).index())
    });
    let gamma = Presentation::gamma();
    let h = [gamma.parse_word("a^3").unwrap(), gamma.parse_word("a*b").unwrap()];
    c.bench_function("todd_coxeter gamma over <a^3, ab>", |b| {
        b.iter(|| todd_coxeter(black_box(&gamma), &h, 100_000).index())
    });
}

fn packed_mul(c: &mut Criterion) {
    let rho = rho_generators().unwrap();
    let gens: Vec<PackedU> = schreier()
        .iter()
        .map(|w| PackedU::from_mat(&rho.eval_word(w)).unwrap())
        .collect();
    c.bench_function("PackedU product", |b| {
        b.iter(|| black_box(&gens[0]).mul(black_box(&gens[2]), &7))
    });
    c.bench_function("PackedU inverse", |b| {
        b.iter(|| black_box(&gens[1]).inverse(&7))
    });
}

fn search(c: &mut Criterion) {
    let rho = rho_generators().unwrap();
    let gens = schreier();
    let targets = ElementaryTarget::char3_defaults();
    let cfg = SearchConfig {
        max_len: 8,
        max_degree: 4,
        max_nodes: 20_000,
        budget_ms: None,
        meet_in_middle: true,
    };
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    g.bench_function("char3 elementary len 8", |b| {
        b.iter(|| elementary_word_search(&rho, &gens, &targets, &cfg).unwrap().1)
    });
    g.finish();
}

fn level1(c: &mut Criterion) {
    let rho = rho_generators().unwrap();
    let gens = schreier();
    let l0: Vec<_> = gens.iter().map(|w| level0_char3(&rho.eval_word(w)).unwrap()).collect();
    let kw = kernel_words(&gens, &l0, 10_000).unwrap();
    let mut g = c.benchmark_group("level1");
    g.sample_size(10);
    g.bench_function("char3 span", |b| {
        b.iter(|| {
            level1_span(&kw.words, |w| level1_log_char3(&rho.eval_word(w)), Ambient::Sl3)
                .unwrap()
                .0
                .dim()
        })
    });
    g.finish();
}

criterion_group!(benches, coset_enumeration, packed_mul, search, level1);
criterion_main!(benches);
