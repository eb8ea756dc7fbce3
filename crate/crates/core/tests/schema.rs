use std::path::Path;

use polcert_core::cert::{verify, Certificate, NegativeControl, RunConfig, Target};
use serde_json::Value;

fn schema() -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schema/certificate.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(cert: &Certificate) {
    let validator = jsonschema::validator_for(&schema()).expect("schema compiles");
    let instance: Value = serde_json::from_str(&cert.to_json()).unwrap();
    let errors: Vec<String> = validator.iter_errors(&instance).map(|e| format!("{e} at {}", e.instance_path)).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn pol2_certificate_matches_schema() {
    assert_valid(&verify(Target::Pol2, &RunConfig::default()).unwrap());
}

#[test]
fn falsified_certificate_matches_schema() {
    let cfg = RunConfig {
        negative_control: Some("relator:pol2:0".parse::<NegativeControl>().unwrap()),
        ..RunConfig::default()
    };
    let cert = verify(Target::Pol2, &cfg).unwrap();
    assert!(cert.falsified());
    assert_valid(&cert);
}

#[test]
fn schema_rejects_unknown_verdict() {
    let validator = jsonschema::validator_for(&schema()).unwrap();
    let cert = verify(Target::Pol2, &RunConfig::default()).unwrap();
    let mut v: Value = serde_json::from_str(&cert.to_json()).unwrap();
    v["body"]["claims"][0]["verdict"] = "maybe".into();
    assert!(!validator.is_valid(&v));
}

#[test]
fn round_trip_preserves_seal() {
    let cert = verify(Target::Remark, &RunConfig::default()).unwrap();
    let back: Certificate = serde_json::from_str(&cert.to_json()).unwrap();
    assert!(back.seal_ok());
    assert_eq!(back.body.canonical_json(), cert.body.canonical_json());
}
