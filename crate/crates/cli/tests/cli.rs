use std::process::{Command, Output};

use serde_json::Value;

fn qma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qma")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn degree_of_j0() {
    let out = qma(&["degree", "--family", "j0", "--n", "3", "--m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["degree"], 27);
}

#[test]
fn degree_csv() {
    let out = qma(&["degree", "--family", "standard", "--n", "3", "--m", "5", "--csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "family,n,m,with_l,degree\nstandard,3,5,false,125\n");
}

#[test]
fn canonical_form_of_jz() {
    let out = qma(&["canonical-form", "--family", "jz", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["blocks"], serde_json::json!([2, 2, 2]));
    assert_eq!(v["zeros"], 3);
    assert_eq!(v["certified"], true);
    assert_eq!(v["W"].as_array().unwrap().len(), 9);
}

#[test]
fn straighten_two_terms() {
    let out = qma(&["straighten", "--family", "standard", "--n", "2", "--word", "Z22 Z11"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
    assert_eq!(v["text"], "(-q + q^-1)·Z12 Z21 + (1)·Z11 Z22");
}

#[test]
fn straighten_with_l_and_slots() {
    let out = qma(&["straighten", "--n", "2", "--word", "L1 L1^-1 Z12"]);
    assert_eq!(json_of(&out)["text"], "(1)·Z12");
    let out = qma(&["straighten", "--n", "2", "--word", "2:Z11 Z11"]);
    assert_eq!(json_of(&out)["term_count"], 1);
    let out = qma(&["straighten", "--n", "2", "--word", "Z12^-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verification_failures_exit_one() {
    let out = qma(&["coproduct-check", "--n", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["counit_failures"], serde_json::json!(["L1", "L2", "L3"]));
    let out = qma(&["suite", "quick", "--corrupt"]);
    assert_eq!(out.status.code(), Some(1));
    let failing = json_of(&out)["unexpected_failures"].clone();
    assert!(failing.as_array().unwrap().iter().any(|x| x == "degree.standard.n2.m3"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qma(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(qma(&["degree", "--family", "nope"]).status.code(), Some(2));
    assert_eq!(qma(&["degree", "--family", "custom"]).status.code(), Some(2));
    assert_eq!(qma(&["degree", "--n", "1"]).status.code(), Some(2));
    assert_eq!(qma(&["poisson-table", "--csv"]).status.code(), Some(2));
    assert_eq!(qma(&["coproduct-check", "--n", "4"]).status.code(), Some(2));
}

#[test]
fn custom_spec_from_file() {
    let dir = std::env::temp_dir().join(format!("qma-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spec.json");
    let zero = "[[0,0,0],[0,0,0]]";
    std::fs::write(&path, format!(r#"{{"n":2,"family":"custom","zetas":{z},"xis":{z}}}"#, z = zero)).unwrap();
    let custom = qma(&["canonical-form", "--wp", path.to_str().unwrap()]);
    let standard = qma(&["canonical-form", "--family", "standard", "--n", "2"]);
    assert_eq!(custom.status.code(), Some(0));
    assert_eq!(json_of(&custom)["blocks"], json_of(&standard)["blocks"]);
    std::fs::write(&path, "{not json").unwrap();
    assert_eq!(qma(&["degree", "--wp", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_are_reproducible() {
    let args = ["variety-check", "--family", "jz", "--n", "2", "--count", "10", "--seed", "7"];
    let a = qma(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, qma(&args).stdout);
    let quick = qma(&["suite", "quick"]);
    assert_eq!(quick.stdout, qma(&["suite", "quick"]).stdout);
    assert_eq!(json_of(&quick)["unexpected_failures"], serde_json::json!([]));
}

#[test]
fn thread_cap_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_qma"))
        .env("QMA_THREADS", "1")
        .args(["center-check", "--family", "jz", "--n", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_qma")).env("QMA_THREADS", "zero").args(["degree"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn module_and_leaf_commands() {
    let v = json_of(&qma(&["verma", "--kind", "j0-minimal", "--n", "2", "--m", "3"]));
    assert_eq!((v["dimension"].as_u64(), v["irreducible"].as_bool()), (Some(3), Some(true)));
    let v = json_of(&qma(&["verma", "--n", "2", "--m", "4", "--lambda", "1,0"]));
    assert_eq!(v["irreducible"], false);
    let out = qma(&["leaf-dim", "--family", "j0", "--n", "3", "--w", "3,2,1"]);
    assert_eq!(json_of(&out)["leaves"][0]["dimension"], 6);
    let v = json_of(&qma(&["poisson-oracle", "--n", "3"]));
    assert_eq!(v["pass"], true);
    assert_eq!(v["crossing"].as_array().unwrap().len(), 9);
}
