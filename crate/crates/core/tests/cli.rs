mod common;

use common::{corpus_path, DECIDE_EXPECTED};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("dnss").chain(args.iter().copied()).map(String::from).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = dnss::cli::run_with(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = run(args);
    let text = if out.trim().is_empty() { err } else { out };
    (code, serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")))
}

fn path(name: &str) -> String {
    corpus_path(name).to_string_lossy().into_owned()
}

#[test]
fn decide_gkos() {
    let (code, v) = run_json(&["decide", "--input", &path("gkos1"), "--max-order", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "inconsistent");
    assert_eq!(v["L_min"], "4");
    assert_eq!(v["certificate"]["target"], "1");
}

#[test]
fn decide_corpus() {
    for (name, expected) in DECIDE_EXPECTED {
        let (code, v) = run_json(&["decide", "--input", &path(name), "--max-order", "8"]);
        assert_eq!(code, 0, "{name}");
        match expected {
            Some(l) => assert_eq!(v["L_min"], l.to_string(), "{name}"),
            None => assert_ne!(v["status"], "inconsistent", "{name}"),
        }
    }
}

#[test]
fn oracle_check_agrees() {
    let (code, v) = run_json(&["decide", "--input", &path("chain2"), "--max-order", "4", "--oracle-check"]);
    assert_eq!(code, 0);
    assert_eq!(v["oracle"]["agrees"], true);
}

#[test]
fn bound_example() {
    let (code, v) = run_json(&[
        "bound", "--n", "1", "--m", "1", "--degree", "2", "--order", "2", "--dim", "0", "--variety-degree", "2",
        "--l", "4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["eps0"]["value"], "4");
    assert_eq!(v["M"]["value"], "128");
    assert_eq!(v["L_zero_dim"]["value"], "4");
}

#[test]
fn certify_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let (code, out, _) = run(&["certify", "--input", &path("claim")]);
    assert_eq!(code, 0);
    std::fs::write(&cert, &out).unwrap();
    let (code, v) = run_json(&["verify", "--cert", cert.to_str().unwrap(), "--input", &path("claim")]);
    assert_eq!(code, 0);
    assert_eq!(v["valid"], true);

    // a tampered cofactor no longer verifies
    let mut c: Value = serde_json::from_str(&out).unwrap();
    c["entries"][0]["cofactor"] = Value::String("1".into());
    std::fs::write(&cert, c.to_string()).unwrap();
    let (_, v) = run_json(&["verify", "--cert", cert.to_str().unwrap(), "--input", &path("claim")]);
    assert_eq!(v["valid"], false);
}

#[test]
fn parse_error_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.dnss");
    std::fs::write(&bad, "states x1\neq: x1 *\n").unwrap();
    let (code, v) = run_json(&["decide", "--input", bad.to_str().unwrap(), "--max-order", "2"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["line"], "2");
}

#[test]
fn missing_file_and_usage() {
    assert_eq!(run(&["decide", "--input", "/nonexistent.dnss", "--max-order", "2"]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn descend_reports_lemma_checks() {
    let (code, v) = run_json(&["descend", "--input", &path("chain3")]);
    assert_eq!(code, 0);
    let dims: Vec<&str> = v["stages"].as_array().unwrap().iter().map(|s| s["dim"].as_str().unwrap()).collect();
    assert_eq!(dims, ["2", "1", "0"]);
    assert_eq!(v["reconstruction"]["L"], "3");
    assert!(v["reconstruction"]["lemma_checks"].as_array().unwrap().iter().all(|c| c["holds"] == true));
}

#[test]
fn descend_stall_is_precondition_failure() {
    let (code, _, _) = run(&["descend", "--input", &path("circle")]);
    assert_eq!(code, 3);
}

#[test]
fn output_is_byte_stable() {
    let args = ["decide", "--input", &path("gkos2"), "--max-order", "8"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a, b);
}

#[test]
fn reduce_output_decides_the_same() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text, _) = run(&["reduce", "--input", &path("second_order")]);
    assert_eq!(code, 0);
    let reduced = dir.path().join("reduced.dnss");
    std::fs::write(&reduced, &text).unwrap();
    let (_, v) = run_json(&["decide", "--input", reduced.to_str().unwrap(), "--max-order", "6"]);
    assert_eq!(v["status"], "inconsistent");
}
