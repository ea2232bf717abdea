use moddata::constructors::{radford_datum, semion_datum};
use moddata::{CycloNum, Rational};
use moddata_cli::json::{cyclo_from_json, cyclo_to_json, datum_to_json};
use moddata_cli::{parse_datum, serialize_datum, CliError};
use proptest::prelude::*;
use serde_json::Value;

const GOLDEN: &str = include_str!("data/semion.json");

fn schema_error_path(text: &str) -> String {
    match parse_datum(text) {
        Err(CliError::Schema { path, .. }) => path,
        other => panic!("expected a schema error, got {:?}", other.map(|_| ())),
    }
}

fn edit(f: impl FnOnce(&mut Value)) -> String {
    let mut v: Value = serde_json::from_str(GOLDEN).unwrap();
    f(&mut v);
    v.to_string()
}

#[test]
fn semion_serializes_to_golden_file() {
    assert_eq!(serialize_datum(&semion_datum()), GOLDEN);
}

#[test]
fn golden_file_parses_to_semion() {
    assert_eq!(parse_datum(GOLDEN).unwrap(), semion_datum());
}

#[test]
fn round_trips() {
    let mut data = vec![semion_datum()];
    for (n, e) in [(3, 1), (5, 2), (7, 3), (9, 2)] {
        data.push(radford_datum(n, e).unwrap());
    }
    data.push(semion_datum().kronecker_product(&radford_datum(3, 1).unwrap()).unwrap());
    for d in data {
        assert_eq!(parse_datum(&serialize_datum(&d)).unwrap(), d);
    }
}

#[test]
fn star_not_involutive_is_a_schema_error() {
    let text = r#"{"labels":["a","b","c"],"unit":"a","star":{"a":"a","b":"c","c":"c"},"S":[],"T":[]}"#;
    assert_eq!(schema_error_path(text), "$.star.b");
}

#[test]
fn schema_errors_carry_paths() {
    let text = edit(|v| v["S"][1][0]["coeffs"] = serde_json::json!(["1"]));
    assert_eq!(schema_error_path(&text), "$.S[1][0].coeffs");
    let text = edit(|v| v["T"][1]["coeffs"][1] = "1/0".into());
    assert_eq!(schema_error_path(&text), "$.T[1].coeffs[1]");
    let text = edit(|v| v["unit"] = "x".into());
    assert_eq!(schema_error_path(&text), "$.unit");
    let text = edit(|v| v["schema"] = "other".into());
    assert_eq!(schema_error_path(&text), "$.schema");
    let text = edit(|v| v.as_object_mut().unwrap().remove("T").map(|_| ()).unwrap());
    assert_eq!(schema_error_path(&text), "$.T");
    assert_eq!(schema_error_path("[1, 2"), "$");
}

#[test]
fn schema_tag_is_optional_on_input() {
    let text = edit(|v| v.as_object_mut().unwrap().remove("schema").map(|_| ()).unwrap());
    assert_eq!(parse_datum(&text).unwrap(), semion_datum());
}

#[test]
fn rationals_are_canonical() {
    let x = CycloNum::from_coeffs(3, &[Rational::new(2.into(), 4.into()), Rational::from_integer((-3).into())]).unwrap();
    let v = cyclo_to_json(&x);
    assert_eq!(v["coeffs"], serde_json::json!(["1/2", "-3"]));
}

fn schema(name: &str) -> Value {
    let path = format!("{}/../../schemas/{}", env!("CARGO_MANIFEST_DIR"), name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn schema_files_describe_the_datum_format() {
    let s = schema("datum.v1.schema.json");
    assert_eq!(s["$id"], "moddata.datum.v1");
    let out = datum_to_json(&semion_datum());
    for key in s["required"].as_array().unwrap() {
        assert!(out.get(key.as_str().unwrap()).is_some(), "missing {}", key);
    }
    let allowed: Vec<&String> = s["properties"].as_object().unwrap().keys().collect();
    for key in out.as_object().unwrap().keys() {
        assert!(allowed.contains(&key), "undocumented {}", key);
    }
    assert_eq!(out["schema"], s["$id"]);
}

#[test]
fn schema_files_describe_the_bundle_format() {
    let s = schema("bundle.v1.schema.json");
    assert_eq!(s["$id"], moddata_cli::bundle::BUNDLE_SCHEMA);
    let b = moddata_cli::commands::analyze(&semion_datum(), &Default::default(), true).unwrap().to_json();
    for key in s["required"].as_array().unwrap() {
        assert!(b.get(key.as_str().unwrap()).is_some(), "missing {}", key);
    }
    let report_keys = s["properties"]["report"]["required"].as_array().unwrap();
    assert_eq!(report_keys.len(), b["report"].as_object().unwrap().len());
    for key in b["verdicts"].as_object().unwrap().keys() {
        let (op, name) = key.split_once('/').unwrap();
        assert!(op.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_'), "{}", key);
        assert!(name.chars().all(|c| c.is_ascii_alphanumeric() || c == '-'), "{}", key);
    }
}

fn cyclo() -> impl Strategy<Value = CycloNum> {
    (1u32..=24).prop_flat_map(|m| {
        let phi = moddata::arith::totient(m as u64) as usize;
        prop::collection::vec((-50i64..50, 1i64..12), phi).prop_map(move |cs| {
            let cs: Vec<Rational> = cs.into_iter().map(|(p, q)| Rational::new(p.into(), q.into())).collect();
            CycloNum::from_coeffs(m, &cs).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn cyclo_json_round_trip(x in cyclo()) {
        let back = cyclo_from_json(&cyclo_to_json(&x), "$").unwrap();
        prop_assert_eq!(back, x);
    }
}
