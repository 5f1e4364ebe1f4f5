use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn torskur(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_torskur"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn eval(req: &str) -> (i32, Value) {
    let out = torskur(&["eval"], Some(req));
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

#[test]
fn tau_on_x1() {
    let (rc, v) = eval(r#"{"algebra":"zigzag","word":[{"kind":"tau","i":0}],"poly":"x1","ring":{"flavor":"curve","n":2}}"#);
    assert_eq!(rc, 0);
    assert_eq!(v["text"], "-c2 - c1 + x2");
}

#[test]
fn curve_merge_on_c1() {
    let (rc, v) = eval(r#"{"algebra":"schur","slot":[1,1],"word":[{"kind":"merge","lambda":[1,1],"pos":0}],"poly":"c1","ring":{"flavor":"curve","n":2}}"#);
    assert_eq!(rc, 0);
    assert_eq!(v["text"], "c2 + c1");
    assert_eq!(v["slot"], serde_json::json!([2]));
}

#[test]
fn empty_word_echoes_input() {
    let (rc, v) = eval(r#"{"algebra":"schur","slot":[2],"word":[],"poly":"x1 + x2","ring":{"flavor":"curve","n":2}}"#);
    assert_eq!(rc, 0);
    assert_eq!(v["text"], "x2 + x1");
}

#[test]
fn json_poly_roundtrips_through_eval() {
    let (_, first) = eval(r#"{"algebra":"schur","slot":[1,1],"poly":"3*x1*c2 - x2","ring":{"flavor":"curve","n":2}}"#);
    let req = serde_json::json!({"algebra": "schur", "slot": [1, 1], "poly": first["poly"]});
    let (rc, second) = eval(&req.to_string());
    assert_eq!(rc, 0);
    assert_eq!(first, second);
}

#[test]
fn phi_places_slots_in_reverse() {
    let (rc, v) = eval(r#"{"algebra":"phi","slot":[2,1],"poly":"u3","ring":{"flavor":"quiver","n":3}}"#);
    assert_eq!(rc, 0);
    assert_eq!(v["slot"], serde_json::json!([1, 2]));
    assert_eq!(v["text"], "x1");
}

#[test]
fn eval_exit_codes() {
    assert_eq!(eval("not json").0, 2);
    assert_eq!(eval(r#"{"algebra":"schur","slot":[2],"poly":"x1","ring":{"flavor":"curve","n":2}}"#).0, 3);
    assert_eq!(eval(r#"{"algebra":"zigzag","word":[],"poly":"u1","ring":{"flavor":"quiver","n":1}}"#).0, 3);
    assert_eq!(eval(r#"{"algebra":"schur","slot":[1,1],"word":[{"kind":"merge","lambda":[1,1],"pos":0}],"poly":"x1","ring":{"flavor":"curve","n":2}}"#).0, 0);
    assert_eq!(eval(r#"{"algebra":"octonion","poly":"x1","ring":{"flavor":"curve","n":1}}"#).0, 2);
}

#[test]
fn verify_zigzag_passes() {
    let out = torskur(&["verify", "--suite", "zigzag", "--n", "2", "--deg", "6"], None);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn verify_lattice_excludes_c1c2() {
    let out = torskur(&["verify", "--suite", "lattice", "--n", "2", "--deg", "4"], None);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["id"].as_str().unwrap().contains("c1c2") && c["status"] == "pass"));
}

#[test]
fn verify_rejects_bad_arguments() {
    assert_eq!(torskur(&["verify", "--suite", "nope"], None).status.code(), Some(2));
    assert_eq!(torskur(&["verify", "--suite", "schur", "--n", "40"], None).status.code(), Some(2));
    assert_eq!(torskur(&["verify", "--suite", "schur", "--deg", "5"], None).status.code(), Some(2));
    assert_eq!(torskur(&["verify", "--suite", "phi", "--prime", "4"], None).status.code(), Some(2));
}

#[test]
fn verify_klr_single_alpha() {
    let out = torskur(&["verify", "--suite", "klr", "--alpha", "1,1", "--deg", "4"], None);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn report_all_degree_zero_is_stable() {
    let dir = std::env::temp_dir().join(format!("torskur-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let a = torskur(&["report-all", "--max-n", "2", "--max-deg", "0", "--prime", "2", "--out", path.to_str().unwrap()], None);
    let b = torskur(&["report-all", "--max-n", "2", "--max-deg", "0", "--prime", "2"], None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
