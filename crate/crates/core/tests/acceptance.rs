//! One PASS/FAIL line per acceptance criterion. All comparisons are exact.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use polcert_core::cert::{verify, Certificate, NegativeControl, RunConfig, Target, Verdict};
use polcert_core::fpgroup::{abelianization, todd_coxeter, Presentation};
use polcert_core::matrep::{check_relators, pi_generators, rho_generators};
use serde_json::{json, Value};

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, n: u32, ok: bool, detail: String) {
        if !ok {
            self.failed += 1;
        }
        println!("criterion {n:>2}: {} {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

fn verdict(c: &Certificate, id: &str) -> Verdict {
    c.claim(id).unwrap_or_else(|| panic!("missing claim {id}")).verdict
}

fn witness<'a>(c: &'a Certificate, id: &str) -> &'a Value {
    &c.claim(id).unwrap_or_else(|| panic!("missing claim {id}")).witness
}

fn all_verified(c: &Certificate, ids: &[&str]) -> (bool, String) {
    let bad: Vec<String> = ids
        .iter()
        .filter(|id| verdict(c, id) != Verdict::Verified)
        .map(|id| format!("{id}={:?}", verdict(c, id)))
        .collect();
    (bad.is_empty(), if bad.is_empty() { String::new() } else { format!("[{}]", bad.join(", ")) })
}

fn wall_ms(c: &Certificate, id: &str) -> u64 {
    c.header.timings.iter().find(|t| t.id == id).map_or(u64::MAX, |t| t.wall_ms)
}

fn controlled(target: Target, control: &str) -> Certificate {
    let cfg = RunConfig {
        search_max_len: 6,
        search_max_nodes: 5_000,
        rho_no_relation_len: 4,
        pi_no_relation_len: 2,
        nilpotency_levels: vec![2],
        negative_control: Some(control.parse::<NegativeControl>().unwrap()),
        ..RunConfig::default()
    };
    verify(target, &cfg).unwrap()
}

fn main() -> ExitCode {
    let mut r = Report { failed: 0 };
    let start = Instant::now();
    let cert = verify(Target::All, &RunConfig::default()).expect("verify all");
    println!("verify all: {} claims in {:.1}s", cert.body.claims.len(), start.elapsed().as_secs_f64());

    // 1
    let p = Presentation::parse("gens: a b\nrels: a^9, b^9, b*a*b^-1*a^-4, a*b*a^-1*b^-4").unwrap();
    let t0 = Instant::now();
    let table = todd_coxeter(&p, &[], 100_000);
    let secs = t0.elapsed().as_secs_f64();
    let n = table.index();
    let ok = n == Some(27) && secs < 1.0 && verdict(&cert, "pol2.order") == Verdict::Verified;
    r.line(1, ok, format!("cosets={n:?} time={secs:.4}s"));

    // 2
    let (ok, bad) = all_verified(
        &cert,
        &["pol2.model_relations", "pol2.model_presents", "pol2.exponent", "pol2.isomorphism_type"],
    );
    let e = &witness(&cert, "pol2.exponent")["exponent"];
    let heis = &witness(&cert, "pol2.isomorphism_type")["heisenberg_isomorphism_found"];
    r.line(2, ok && *e == json!(9) && *heis == json!(false), format!("exponent={e} heisenberg_iso={heis} {bad}"));

    // 3
    let f = abelianization(&Presentation::gamma());
    let ok = f == [BigInt::from(3), BigInt::from(9)] && verdict(&cert, "gamma.abelianization") == Verdict::Verified;
    r.line(3, ok, format!("invariant_factors={f:?}"));

    // 4
    let w = witness(&cert, "gamma.cubic_derivation");
    let ok = verdict(&cert, "gamma.cubic_derivation") == Verdict::Verified
        && w["valid"] == json!(true)
        && w["4^8 mod 9"] == json!(7);
    r.line(4, ok, format!("steps={} 4^8 mod 9={}", w["steps"], w["4^8 mod 9"]));

    // 5
    let gamma = Presentation::gamma();
    let (rho, pi) = (rho_generators().unwrap(), pi_generators().unwrap());
    let t0 = Instant::now();
    let rr = check_relators(&rho, &gamma);
    let pr = check_relators(&pi, &gamma);
    let secs = t0.elapsed().as_secs_f64();
    let (ok, bad) = all_verified(&cert, &["char3.transcription", "char3.relators", "char0.relators"]);
    r.line(5, ok && rr.ok && pr.ok && secs < 1.0, format!("rho={} pi={} time={secs:.4}s {bad}", rr.ok, pr.ok));

    // 6
    let w = witness(&cert, "char3.infinite_order");
    r.line(
        6,
        verdict(&cert, "char3.infinite_order") == Verdict::Verified,
        format!("a={} b={} b*a={}", w["a"], w["b"], w["b*a"]),
    );

    // 7
    let (ok, bad) = all_verified(&cert, &["char0.descent", "char3.polynomial_images"]);
    let gens = witness(&cert, "char0.descent")["generators"].as_array().map_or(0, Vec::len);
    r.line(7, ok && gens == 4, format!("schreier_generators={gens} {bad}"));

    // 8
    let (ok, bad) = all_verified(&cert, &["char0.level0", "char3.level0"]);
    let (o0, o3) = (&witness(&cert, "char0.level0")["order"], &witness(&cert, "char3.level0")["order"]);
    r.line(8, ok && *o0 == json!(27) && *o3 == json!(27), format!("orders={o0},{o3} {bad}"));

    // 9
    let (ok, bad) = all_verified(&cert, &["char3.level1", "char0.level1", "char0.index"]);
    let w0 = witness(&cert, "char0.level1");
    let (d3, d0) = (&witness(&cert, "char3.level1")["dim"], &w0["dim_mod_scalars"]);
    let idx = &witness(&cert, "char0.index")["index"];
    let kgens = &w0["kernel"]["generators"];
    let ms = wall_ms(&cert, "char0.level1") + wall_ms(&cert, "char3.level1");
    let ok = ok
        && *d3 == json!(7)
        && *d0 == json!(6)
        && w0["equals_displayed"] == json!(true)
        && *idx == json!(624)
        && *kgens == json!(82)
        && ms < 60_000;
    r.line(9, ok, format!("dim3={d3} dim0={d0} index={idx} kernel_generators={kgens} time={ms}ms {bad}"));

    // 10
    let w = witness(&cert, "remark.no_intertwiner");
    r.line(
        10,
        verdict(&cert, "remark.no_intertwiner") == Verdict::Verified,
        format!("automorphisms={} witness={}", w["automorphisms"], w["witness"]),
    );

    // 11
    let (ok, bad) = all_verified(&cert, &["gamma.cubic_maps_vs_homs", "pol2.quadratic_maps_vs_homs", "c2.cubic_maps"]);
    let rows = |id: &str| {
        witness(&cert, id)["groups"]
            .as_array()
            .unwrap()
            .iter()
            .map(|g| format!("{}:{}/{}", g["group"].as_str().unwrap_or("?"), g["maps"], g["homs"]))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let groups = witness(&cert, "gamma.cubic_maps_vs_homs")["groups"].as_array().map_or(0, Vec::len);
    r.line(
        11,
        ok && groups == 4,
        format!(
            "cubic[{}] quadratic[{}] c2->c8={} {bad}",
            rows("gamma.cubic_maps_vs_homs"),
            rows("pol2.quadratic_maps_vs_homs"),
            witness(&cert, "c2.cubic_maps")["maps"]
        ),
    );

    // 12
    let w = witness(&cert, "nilpotency.depth");
    let depths: Vec<(u64, u64)> = w["levels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| (l["n"].as_u64().unwrap_or(0), l["depth"].as_u64().unwrap_or(0)))
        .collect();
    let expected: Vec<(u64, u64)> = (2..=4).map(|n| (n, n - 1)).collect();
    r.line(
        12,
        verdict(&cert, "nilpotency.depth") == Verdict::Verified && depths == expected,
        format!("(n, depth)={depths:?}"),
    );

    // 13
    let t0 = Instant::now();
    let suites = [
        ("field_axioms", common::field_axioms()),
        ("eval_homomorphism", common::eval_homomorphism()),
        ("grading", common::grading()),
        ("level1_traces", common::level1_traces()),
    ];
    let failures: Vec<String> = suites
        .iter()
        .filter_map(|(name, res)| res.as_ref().err().map(|e| format!("{name}: {e}")))
        .collect();
    r.line(
        13,
        failures.is_empty(),
        format!("{} suites x {} cases in {:.1}s {failures:?}", suites.len(), common::CASES, t0.elapsed().as_secs_f64()),
    );

    // 14
    let v = verdict(&cert, "char3.elementary_words");
    let s = verdict(&cert, "char3.steinberg");
    let w = witness(&cert, "char3.elementary_words");
    r.line(
        14,
        v != Verdict::Falsified && s != Verdict::Falsified,
        format!("found {}/{} words={v:?} steinberg={s:?}", w["found"], w["targets"]),
    );

    // 15
    let runs = [
        (Target::Char0, "pi:a:0,0", "char0.relators"),
        (Target::Char3, "rho:b:0,0", "char3.relators"),
        (Target::Presentation, "relator:gamma:0", "gamma.abelianization"),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (t, control, id) in runs {
        let c = controlled(t, control);
        let flipped = c.falsified() && verdict(&c, id) == Verdict::Falsified;
        ok &= flipped;
        let n = c.body.claims.iter().filter(|c| c.verdict == Verdict::Falsified).count();
        detail.push(format!("{control}: {n} falsified"));
    }
    r.line(15, ok, detail.join(", "));

    println!("{} of 15 criteria passed", 15 - r.failed);
    if r.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
