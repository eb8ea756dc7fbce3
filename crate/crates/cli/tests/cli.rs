use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn polcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polcert"))
        .args(args)
        .env_remove("POLCERT_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("certificate on stdout")
}

fn claim<'a>(cert: &'a Value, id: &str) -> &'a Value {
    cert["body"]["claims"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == id)
        .unwrap_or_else(|| panic!("no claim {id}"))
}

fn group(name: &str) -> String {
    root().join("groups").join(name).display().to_string()
}

fn quick_config() -> PathBuf {
    let p = std::env::temp_dir().join(format!("polcert-cli-quick-{}.toml", std::process::id()));
    std::fs::write(
        &p,
        "search_max_len = 8\nsearch_max_nodes = 20000\nrho_no_relation_len = 5\npi_no_relation_len = 2\nnilpotency_levels = [2, 3]\n",
    )
    .unwrap();
    p
}

#[test]
fn verify_pol2_is_deterministic() {
    let a = polcert(&["verify", "pol2"]);
    let b = polcert(&["verify", "pol2"]);
    assert_eq!(a.status.code(), Some(0));
    let (ca, cb) = (json(&a), json(&b));
    assert_eq!(ca["body"].to_string(), cb["body"].to_string());
    assert_eq!(ca["header"]["body_sha256"], cb["header"]["body_sha256"]);
    for c in ca["body"]["claims"].as_array().unwrap() {
        assert_eq!(c["verdict"], "verified", "{c}");
    }
    assert_eq!(claim(&ca, "pol2.order")["witness"]["cosets"], 27);
}

#[test]
fn corrupted_pi_entry_exits_nonzero() {
    let out = polcert(&["verify", "char0", "--mutate", "pi:b:0,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(claim(&json(&out), "char0.relators")["verdict"], "falsified");
}

#[test]
fn corrupted_relator_and_rho_exit_nonzero() {
    let cfg = quick_config();
    let cfg = cfg.to_str().unwrap();
    let out = polcert(&["verify", "presentation", "--mutate", "relator:gamma:1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(claim(&json(&out), "gamma.abelianization")["verdict"], "falsified");
    let out = polcert(&["verify", "char3", "--config", cfg, "--mutate", "rho:b:1,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(claim(&json(&out), "char3.relators")["verdict"], "falsified");
}

#[test]
fn out_file_and_markdown_report() {
    let path = std::env::temp_dir().join(format!("polcert-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = polcert(&["verify", "remark", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let md = polcert(&["report", "--in", p, "--format", "markdown"]);
    assert_eq!(md.status.code(), Some(0));
    let text = String::from_utf8(md.stdout).unwrap();
    assert!(text.contains("remark.no_intertwiner"));
    assert!(text.contains("verified"));
    let js = polcert(&["report", "--in", p, "--format", "json"]);
    assert_eq!(json(&js)["body"], serde_json::from_str::<Value>(&std::fs::read_to_string(&path).unwrap()).unwrap()["body"]);
    std::fs::remove_file(path).ok();
}

#[test]
fn classify_examples() {
    let s3 = polcert(&["classify", "--group", &group("s3.grp"), "--degree", "3"]);
    assert_eq!(s3.status.code(), Some(0));
    let c = json(&s3);
    let w = &claim(&c, "classify.maps")["witness"];
    assert_eq!(w["count"], 9);
    assert_eq!(w["oracle"]["homs"], 9);

    for d in ["1", "2", "5"] {
        let t = polcert(&["classify", "--group", &group("trivial.grp"), "--degree", d]);
        assert_eq!(claim(&json(&t), "classify.maps")["witness"]["count"], 1);
    }

    let h = polcert(&["classify", "--group", &group("heisenberg27.grp"), "--degree", "2"]);
    let c = json(&h);
    let r = claim(&c, "classify.maps");
    assert_eq!(r["verdict"], "verified");
    assert_eq!(r["witness"]["count"], r["witness"]["oracle"]["homs"]);

    let c8 = polcert(&["classify", "--group", &group("c8.grp"), "--degree", "3", "--domain", "c2"]);
    assert_eq!(claim(&json(&c8), "classify.maps")["witness"]["count"], 8);
}

#[test]
fn classify_parse_error_reports_line() {
    let p = std::env::temp_dir().join(format!("polcert-bad-{}.grp", std::process::id()));
    std::fs::write(&p, "order 2\n0 1\n1 7\n").unwrap();
    let out = polcert(&["classify", "--group", p.to_str().unwrap(), "--degree", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "{err}");
    std::fs::remove_file(p).ok();
}

#[test]
fn search_identity_and_check_word_round_trip() {
    let id = polcert(&["search", "--char", "3", "--target", "identity", "--max-len", "2"]);
    assert_eq!(id.status.code(), Some(0));
    let c = json(&id);
    let o = &claim(&c, "search.elementary")["witness"]["outcome"];
    assert_eq!(o["status"], "found");
    assert_eq!(o["length"], 0);

    let s = polcert(&[
        "search", "--char", "3", "--target", "E12:u^2", "--max-len", "12", "--max-degree", "4",
        "--max-nodes", "100000",
    ]);
    assert_eq!(s.status.code(), Some(0));
    let c = json(&s);
    let o = &claim(&c, "search.elementary")["witness"]["outcome"];
    assert_eq!(o["status"], "found");
    let w = o["word"].as_str().unwrap();
    let again = polcert(&["search", "--char", "3", "--target", "E12:u^2", "--check-word", w]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(claim(&json(&again), "search.check_word")["verdict"], "verified");
    let wrong = polcert(&["search", "--char", "3", "--target", "E13:u^2", "--check-word", w]);
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn search_not_found_is_inconclusive() {
    let out = polcert(&["search", "--char", "3", "--target", "E13:u^3", "--max-len", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(claim(&json(&out), "search.elementary")["verdict"], "inconclusive");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(polcert(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(polcert(&["search", "--char", "5", "--target", "identity"]).status.code(), Some(2));
    let p = std::env::temp_dir().join(format!("polcert-zero-{}.json", std::process::id()));
    std::fs::write(&p, r#"{"search_max_len": 0}"#).unwrap();
    assert_eq!(polcert(&["verify", "pol2", "--config", p.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_file(p).ok();
    let threads = Command::new(env!("CARGO_BIN_EXE_polcert"))
        .args(["verify", "pol2"])
        .env("POLCERT_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(threads.status.code(), Some(2));
}

#[test]
fn thread_cap_is_reported() {
    let out = Command::new(env!("CARGO_BIN_EXE_polcert"))
        .args(["verify", "pol2"])
        .env("POLCERT_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["header"]["threads"], 1);
}
