use std::process::{Command, Output};

use serde_json::Value;

fn katokit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_katokit"))
        .args(args)
        .env("KATOKIT_THREADS", "2")
        .output()
        .expect("spawn katokit")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn multiplicity(report: &Value, label: &str) -> String {
    report["multiplicities"]
        .as_array()
        .unwrap()
        .iter()
        .find(|n| n["label"] == label)
        .unwrap_or_else(|| panic!("no node {label}"))["multiplicity"]
        .as_str()
        .unwrap()
        .to_string()
}

#[test]
fn analyze_index_one_example() {
    let out = katokit(&["analyze", "[s1 s2 r1]"]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["index"], "1");
    assert_eq!(multiplicity(&r, "A1"), "1");
    for c in ["C0", "C1", "C2"] {
        assert_eq!(multiplicity(&r, c), "2", "{c}");
    }
    assert_eq!(r["entries"], serde_json::json!([3, 4, 2, 2]));
}

#[test]
fn analyze_accepts_entry_list() {
    let a = katokit(&["analyze", "3,4,2,2"]);
    let b = katokit(&["analyze", "[s1 s2 r1]"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn analyze_fractional_index() {
    let r = json(&katokit(&["analyze", "[s2 r1]"]));
    assert_eq!(r["index"], "2");
    assert_eq!(r["tip_multiplicity"], "1/2");
}

#[test]
fn enumerate_counts() {
    let out = katokit(&["enumerate", "--b2", "3", "--count-only"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "3");

    let listed = katokit(&["enumerate", "--b2", "4"]);
    let count = katokit(&["enumerate", "--b2", "4", "--count-only"]);
    let lines = String::from_utf8(listed.stdout).unwrap().lines().count();
    assert_eq!(lines.to_string(), String::from_utf8(count.stdout).unwrap().trim());
}

#[test]
fn enumerate_index_one_is_subset() {
    let all = String::from_utf8(katokit(&["enumerate", "--b2", "5"]).stdout).unwrap();
    let one = String::from_utf8(katokit(&["enumerate", "--b2", "5", "--index-one"]).stdout).unwrap();
    assert!(!one.is_empty());
    for line in one.lines() {
        assert!(all.lines().any(|l| l == line), "{line}");
    }
}

#[test]
fn verify_passes() {
    let out = katokit(&["verify", "--b2-max", "8"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_json() {
    let r = json(&katokit(&["verify", "--b2-max", "5", "--json"]));
    assert_eq!(r["b2_max"], 5);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["failed"] == 0));
}

#[test]
fn graph_formats() {
    let dot = String::from_utf8(katokit(&["graph", "[s1 r1|s1 r1]"]).stdout).unwrap();
    assert!(dot.starts_with("digraph") || dot.starts_with("graph"), "{dot}");
    let g = json(&katokit(&["graph", "[s1 r1|s1 r1]", "--format", "json"]));
    assert_eq!(g["nodes"].as_array().unwrap().len(), 4);
    assert_eq!(g["determinant"], "9");
}

#[test]
fn germ_and_moduli() {
    let g = json(&katokit(&["germ", "[s1 s2 r1]"]));
    assert_eq!(g["germ_index"], "1");
    let m = json(&katokit(&["moduli", "[s2 r2]", "--delta", "1"]));
    assert_eq!(m["epsilon"], 1);
    assert_eq!(m["log_dim"], 3);
    assert_eq!(m["fixed_dim"], 5);
}

#[test]
fn error_codes() {
    let cases = [
        (vec!["analyze", "[s1 r1"], "syntax_error"),
        (vec!["analyze", "[s2 s3]"], "not_intermediate"),
        (vec!["analyze", "[r2]"], "not_intermediate"),
        (vec!["analyze", "[r2 r1]"], "syntax_error"),
        (vec!["analyze", "5,2,3,2"], "malformed_cycle"),
        (vec!["moduli", "[s3 r2]", "--delta", "1"], "delta_inconsistent"),
        (vec!["moduli", "[s3 r2]", "--delta", "2"], "invalid_argument"),
        (vec!["enumerate", "--b2", "1"], "invalid_argument"),
        (vec!["frobnicate"], "usage_error"),
    ];
    for (args, code) in cases {
        let out = katokit(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert_eq!(json(&out)["code"], code, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn bad_thread_count() {
    let out = Command::new(env!("CARGO_BIN_EXE_katokit"))
        .args(["enumerate", "--b2", "3"])
        .env("KATOKIT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["code"], "invalid_argument");
}

#[test]
fn output_is_deterministic() {
    for args in [vec!["analyze", "[s1 s1 s1 r2|s2 r1]"], vec!["enumerate", "--b2", "7", "--index-one"]] {
        let a = katokit(&args);
        let b = Command::new(env!("CARGO_BIN_EXE_katokit"))
            .args(&args)
            .env("KATOKIT_THREADS", "1")
            .output()
            .unwrap();
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
