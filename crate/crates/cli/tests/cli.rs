use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_homform"));
    c.env_remove("HOMFORM_GUARD_COLUMNS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn homform")
}

fn json_of(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

fn gallery_file(dir: &TempDir, name: &str) -> PathBuf {
    let p = dir.path().join(format!("{}.json", name.replace('/', "_")));
    let o = run(&["gallery", name, "--output", p.to_str().unwrap()]);
    assert!(o.status.success());
    p
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_yang_mills() {
    let dir = TempDir::new().unwrap();
    let f = gallery_file(&dir, "yang-mills-3");
    let v = json_of(&run(&["analyze", s(&f), "--N", "3"]));
    assert_eq!(v["preregular"], json!(true));
    assert_eq!(v["three_regular"], json!(true));
    assert_eq!(v["Q"], json!([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]));
    assert_eq!(v["format"], json!("homform-report/1"));
}

#[test]
fn analyze_epsilon_four_fails_iii_prime() {
    let dir = TempDir::new().unwrap();
    let f = gallery_file(&dir, "epsilon-4-N3");
    let v = json_of(&run(&["analyze", s(&f), "--N", "3"]));
    assert_eq!(v["iii_prime"], json!(false));
    assert_eq!(v["three_regular"], json!(true));
}

#[test]
fn validation_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let empty = write(
        &dir,
        "empty.json",
        &json!({"format": "homform-form/1", "dimension": 2, "arity": 2, "field": {"kind": "rational"}, "entries": []}),
    );
    let o = run(&["analyze", s(&empty)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("entries"));
    let o = run(&["analyze", "/nonexistent/form.json"]);
    assert_eq!(o.status.code(), Some(2));
    let f = gallery_file(&dir, "yang-mills-3");
    assert_eq!(run(&["hilbert", s(&f), "--N", "7"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", s(&f), "--field", "quadratic:-1,0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn hilbert_matches_prediction() {
    let dir = TempDir::new().unwrap();
    let f = gallery_file(&dir, "yang-mills-3");
    let v = json_of(&run(&["hilbert", s(&f), "--N", "3", "--max-degree", "4"]));
    assert_eq!(v["dims"], json!([1, 3, 9, 24, 64]));
    assert_eq!(v["comparison"], json!("match"));
}

#[test]
fn koszul_check_counterexample_fails() {
    let dir = TempDir::new().unwrap();
    let f = gallery_file(&dir, "as-counterexample");
    let v = json_of(&run(&["koszul-check", s(&f), "--N", "2", "--max-degree", "7"]));
    assert_eq!(v["verdict"], json!("fail"));
    assert_eq!(v["fail_at"], json!({"position": 2, "degree": 4, "dim": 2}));
    let f = gallery_file(&dir, "eps-q[2]");
    let v = json_of(&run(&["koszul-check", s(&f), "--N", "2", "--max-degree", "6"]));
    assert_eq!(v["verdict"], json!("pass"));
    assert_eq!(v["gorenstein"]["global_dimension"], json!(2));
    assert!(v["summary"].as_str().unwrap().contains("truncated evidence"));
}

#[test]
fn dual_of_area_form() {
    let dir = TempDir::new().unwrap();
    let f = gallery_file(&dir, "epsilon-2-N2");
    let v = json_of(&run(&["dual", s(&f), "--N", "2"]));
    assert_eq!(v["dual_dims"], json!([1, 2, 1, 0]));
    assert_eq!(v["frobenius_dims"], json!([1, 2, 1]));
}

#[test]
fn twist_round_trip() {
    let dir = TempDir::new().unwrap();
    let f = gallery_file(&dir, "epsilon-2-N2");
    let l = json!({"format": "homform-matrix/1", "field": {"kind": "rational"},
        "rows": [[[[2, 1]], [[0, 1]]], [[[0, 1]], [[1, 2]]]]});
    let li = json!({"format": "homform-matrix/1", "field": {"kind": "rational"},
        "rows": [[[[1, 2]], [[0, 1]]], [[[0, 1]], [[2, 1]]]]});
    let lp = write(&dir, "l.json", &l);
    let lip = write(&dir, "li.json", &li);
    let tw = dir.path().join("tw.json");
    let o = run(&["twist", s(&f), "--matrix", s(&lp), "--N", "2", "--output", s(&tw)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let q = json_of(&run(&["analyze", s(&tw)]));
    assert_eq!(q["Q"], json!([["-1/4", "0"], ["0", "-4"]]));
    let back = json_of(&run(&["twist", s(&tw), "--matrix", s(&lip)]));
    let orig: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!(back, orig);
}

#[test]
fn twist_outside_glw_is_a_precondition_error() {
    let dir = TempDir::new().unwrap();
    let f = gallery_file(&dir, "epsilon-2-N2");
    let bad = json!({"format": "homform-matrix/1", "field": {"kind": "rational"},
        "rows": [[[[2, 1]], [[0, 1]]], [[[0, 1]], [[1, 1]]]]});
    let p = write(&dir, "bad.json", &bad);
    assert_eq!(run(&["twist", s(&f), "--matrix", s(&p)]).status.code(), Some(4));
}

#[test]
fn guard_exits_three() {
    let dir = TempDir::new().unwrap();
    let f = gallery_file(&dir, "yang-mills-3");
    let o = bin().args(["hilbert", s(&f), "--N", "3"]).env("HOMFORM_GUARD_COLUMNS", "10").output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    // the flag wins over the environment
    let o = bin()
        .args(["hilbert", s(&f), "--N", "3", "--guard-columns", "100000"])
        .env("HOMFORM_GUARD_COLUMNS", "10")
        .output()
        .unwrap();
    assert!(o.status.success());
    let o = bin().args(["hilbert", s(&f), "--N", "3"]).env("HOMFORM_GUARD_COLUMNS", "lots").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn hopf_presentation_and_bad_wtilde() {
    let dir = TempDir::new().unwrap();
    let f = gallery_file(&dir, "eps-q[2]");
    let v = json_of(&run(&["hopf", s(&f)]));
    assert_eq!(v["format"], json!("homform-hopf/1"));
    for k in ["antipode", "coaction", "contraction", "coproduct", "counit"] {
        assert_eq!(v["checks"][k], json!(true), "{k}");
    }
    assert_eq!(v["yang_baxter"]["braid_plus"], json!(true));
    // w itself is not a right inverse of w
    assert_eq!(run(&["hopf", s(&f), "--wtilde", s(&f)]).status.code(), Some(4));
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = gallery_file(&dir, "a-u[(3/5,4/5),(1,0),(1,0)]");
    let a = run(&["analyze", s(&f), "--N", "2"]);
    let b = run(&["analyze", s(&f), "--N", "2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v["preregular"], json!(true));
    assert_eq!(v["Q"][0][0], json!("-1"));
}
