use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bethe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bethe")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = bethe(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn spec_file(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("bethe-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn enumerate_roots_a2() {
    let v = json(&["enumerate", "roots", "A2"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["positive_roots"].as_array().unwrap().len(), 3);
}

#[test]
fn enumerate_nested_sets_a3() {
    let v = json(&["enumerate", "nested-sets", "--type", "A3"]);
    assert_eq!(v["count"], 5);
}

#[test]
fn b2_layers_contain_the_long_root_pair() {
    let v = json(&["enumerate", "layers", "B2"]);
    let long: Vec<&Value> = v["layers"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|l| l["phi_y_positive"] == serde_json::json!([[1, 0], [1, 2]]))
        .collect();
    assert_eq!(long.len(), 1);
    assert_eq!(long[0]["dim"], 0);
    assert_eq!(long[0]["point"], serde_json::json!(["1", "-1"]));
    assert_eq!(long[0]["gamma"], serde_json::json!([2]));
    assert_eq!(long[0]["indecomposable"], false);
}

#[test]
fn dot_output_is_layers_only() {
    let out = bethe(&["enumerate", "layers", "A2", "--format", "dot"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("digraph layers {"));
    assert_eq!(bethe(&["enumerate", "roots", "A2", "--format", "dot"]).status.code(), Some(2));
}

#[test]
fn unknown_type_is_a_usage_error() {
    let out = bethe(&["enumerate", "roots", "Q7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn interior_spec_agrees_with_chart_spec() {
    let a = spec_file("interior", r#"{"type": "B2", "C": ["2", "-3"]}"#);
    let b = spec_file("chart", r#"{"type": "B2", "w": [], "I": [1, 2], "y": ["2", "-3"], "S": [], "t": []}"#);
    let qa = json(&["subspace", a.to_str().unwrap()]);
    let qb = json(&["subspace", b.to_str().unwrap()]);
    assert_eq!(qa["rref"], qb["rref"]);
    assert_eq!(qa["input"]["C"], serde_json::json!(["2", "-3"]));
    assert_eq!(qa["basis_labels"].as_array().unwrap().len(), 6);
}

#[test]
fn g2_torsion_layer_subspace() {
    let p = spec_file("g2", r#"{"type": "G2", "I": [1, 2], "y": ["-1 + z", "1"], "S": [[1, 2], [1]], "t": ["1", "2"]}"#);
    let q = json(&["subspace", p.to_str().unwrap()]);
    assert_eq!(q["dim"], 2);
    assert_eq!(q["field_order"], 6);
}

#[test]
fn malformed_specs_exit_2() {
    for (name, body) in [
        ("syntax", "{"),
        ("field", r#"{"type": "A2", "C": ["1", "2"], "extra": 0}"#),
        ("rank", r#"{"type": "A2", "C": ["2"]}"#),
        ("singular", r#"{"type": "A2", "C": ["1", "2"]}"#),
        ("nested", r#"{"type": "A2", "I": [1, 2], "y": ["1", "1"], "S": [[1, 2]], "t": ["1"]}"#),
    ] {
        let p = spec_file(name, body);
        let out = bethe(&["subspace", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"), "{name}");
    }
}

#[test]
fn check_all_a2() {
    let out = bethe(&["check", "all", "--type", "A2", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["reports"].as_array().unwrap().len(), 10);
}

#[test]
fn check_hecke_g2() {
    assert_eq!(bethe(&["check", "hecke", "--type", "G2"]).status.code(), Some(0));
}

#[test]
fn check_rank_b3() {
    assert_eq!(bethe(&["check", "rank", "--type", "B3", "--samples", "50"]).status.code(), Some(0));
}

#[test]
fn check_type_a_alias() {
    assert_eq!(bethe(&["check", "typeA"]).status.code(), Some(0));
    assert_eq!(bethe(&["check", "type-a"]).status.code(), Some(0));
}

#[test]
fn typed_suite_needs_a_type() {
    assert_eq!(bethe(&["check", "rank"]).status.code(), Some(2));
}

#[test]
fn same_seed_same_bytes() {
    let args = ["check", "injectivity", "--type", "B2", "--seed", "11", "--samples", "20"];
    let a = bethe(&args);
    let b = bethe(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = bethe(&["check", "injectivity", "--type", "B2", "--seed", "12", "--samples", "20"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("bethe-cli-{}-out.json", std::process::id()));
    let out = bethe(&["enumerate", "roots", "B2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["num_positive"], 4);
}
