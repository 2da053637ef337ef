use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liereal")).args(args).output().expect("spawn liereal")
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

#[test]
fn realforms_g2_json() {
    let v = json(&["realforms", "G2", "--json"]);
    assert_eq!(v["schema_version"], 1);
    let labels: Vec<&str> = v["forms"].as_array().unwrap().iter().map(|f| f["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["G2c", "G2(2)"]);
}

#[test]
fn verify_split_g2_passes() {
    let out = run(&["verify", "G2(2)"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("verify G2(2): PASS"));
}

#[test]
fn bad_type_is_a_usage_error() {
    let out = run(&["roots", "Z9"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["realforms", "B1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "so(2,9,1)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rank_limit_gives_partial_json() {
    let out = run(&["embed", "regular", "E7(7)", "--json"]);
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["partial"], true);
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn same_seed_same_bytes() {
    let args = ["embed", "s", "A3", "--embedding", "B2-A3", "--json", "--seed", "17"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn jobs_do_not_change_rows() {
    let a = json(&["embed", "regular", "so(4,4)", "--json"]);
    let b = json(&["embed", "regular", "so(4,4)", "--json", "--jobs", "4"]);
    assert_eq!(a["rows"], b["rows"]);
}

#[test]
fn maximal_f4() {
    let v = json(&["maximal", "F4", "--json"]);
    let text = v.to_string();
    for t in ["A2+A2", "A1+C3", "B4"] {
        assert!(text.contains(&format!("\"{t}\"")), "{t} missing in {text}");
    }
}
