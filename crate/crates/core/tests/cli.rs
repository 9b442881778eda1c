//! End-to-end runs of the binary.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use grassmann_cf::{compute_plucker, IntMatrix, PluckerVector};
use serde_json::Value;

fn bin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_grassmann-cf"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn matrix_of(v: &Value) -> IntMatrix {
    let rows: Vec<Vec<i64>> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|x| x.as_str().unwrap().parse().unwrap()).collect())
        .collect();
    IntMatrix::from_rows(&rows).unwrap()
}

const GOLDEN: &str = "2 4 : 10 10 12 -15 3 21\n";

#[test]
fn plucker_of_g36_matrix() {
    let o = bin(&["plucker", "-", "--format", "text"], "1 0 0 1 1 1\n0 1 0 -3 -2 -1\n0 0 1 8 5 1\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "3 6 : 1 8 5 1 3 2 1 1 5 3 1 1 1 3 7 4 1 2 1 -1");
}

#[test]
fn plucker_rejects_ragged_rows() {
    let o = bin(&["plucker", "-"], "1 2 3\n4 5\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn run_mee_on_golden_input() {
    let o = bin(&["run", "--algo", "mee", "-"], GOLDEN);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["result"]["index"], "1");
    assert!(["1", "-1"].contains(&doc["result"]["p_hat"].as_str().unwrap()));
    let m = matrix_of(&doc["result"]["matrix"]);
    assert_eq!(compute_plucker(&m).unwrap(), PluckerVector::parse(GOLDEN).unwrap());
    for step in doc["trace"]["steps"].as_array().unwrap() {
        assert!(step["label"].is_string() && step["n"].is_u64() && step["matrix"].is_array());
    }
}

#[test]
fn run_exit_codes() {
    assert_eq!(bin(&["run", "-"], "2 4 : 1 0 0 0 0 1").status.code(), Some(3));
    assert_eq!(bin(&["run", "-"], "2 4 : 0 0 0 0 0 0").status.code(), Some(2));
    assert_eq!(bin(&["run", "-"], "not a vector").status.code(), Some(2));
    assert_eq!(bin(&["run", "--algo", "mee", "-"], "3 4 : 1 0 0 0").status.code(), Some(2));
    let single = bin(&["run", "--algo", "minee", "-"], "3 3 : 5");
    assert_eq!(single.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&single)).unwrap();
    assert!(doc["trace"]["steps"].as_array().unwrap().is_empty());
}

#[test]
fn run_is_byte_deterministic() {
    let a = bin(&["run", "--algo", "minee", "-"], GOLDEN);
    let b = bin(&["run", "--algo", "minee", "-"], GOLDEN);
    assert_eq!(a.stdout, b.stdout);
    let t = bin(&["run", "--algo", "mee", "--strict-trace", "--format", "text", "-"], GOLDEN);
    assert_eq!(t.status.code(), Some(0));
    assert!(stdout(&t).starts_with("p_hat:"));
}

#[test]
fn random_instances() {
    let args = ["random", "--k", "2", "--n", "5", "--bound", "20", "--seed", "11"];
    let (a, b) = (bin(&args, ""), bin(&args, ""));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_str(&stdout(&a)).unwrap();
    let m = matrix_of(&doc["matrix"]);
    assert_eq!(m.rank(), 2);
    assert!(m.entries().iter().all(|x| x.magnitude() <= &20u32.into()));
    let p = compute_plucker(&m).unwrap();
    assert_eq!(PluckerVector::parse(&doc["plucker"].to_string()).unwrap(), p);
    assert_eq!(bin(&["random", "--k", "2", "--n", "5", "--bound", "0"], "").status.code(), Some(2));
}

#[test]
fn verify_accepts_runs_and_catches_mutations() {
    let input = scratch("golden.txt", GOLDEN);
    let run = bin(&["run", "--algo", "mee", input.to_str().unwrap()], "");
    let good = scratch("golden-run.json", &stdout(&run));
    let ok = bin(&["verify", good.to_str().unwrap(), input.to_str().unwrap()], "");
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).lines().all(|l| l.starts_with("PASS")));

    let doc: Value = serde_json::from_str(&stdout(&run)).unwrap();
    let mut corrupted = doc.clone();
    corrupted["trace"]["steps"][0]["matrix"][0][0] = Value::String("7".into());
    let bad = scratch("golden-corrupt.json", &corrupted.to_string());
    let o = bin(&["verify", bad.to_str().unwrap(), input.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.starts_with("FAIL unimodular") || l.starts_with("FAIL pushforward")));

    let mut shifted = doc.clone();
    let ph: i64 = doc["trace"]["p_hat"].as_str().unwrap().parse().unwrap();
    shifted["trace"]["p_hat"] = Value::String((ph + 1).to_string());
    let bad = scratch("golden-shifted.json", &shifted.to_string());
    let o = bin(&["verify", bad.to_str().unwrap(), input.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL gcd"));

    let other = scratch("small.txt", "2 3 : 1 2 3");
    let o = bin(&["verify", good.to_str().unwrap(), other.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(2));

    let o = bin(
        &["verify", "--batch", good.to_str().unwrap(), input.to_str().unwrap(), bad.to_str().unwrap(), input.to_str().unwrap()],
        "",
    );
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).matches("# ").count(), 2);
}

#[test]
fn positivize_golden() {
    let o = bin(&["positivize", "--format", "text", "-"], GOLDEN);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next().unwrap(), "2 4 : 10 10 12 15 21 3");
    let o = bin(&["positivize", "--strict-trace", "-"], GOLDEN);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["swaps"], 1);
    assert_eq!(bin(&["positivize", "-"], "3 3 : 1").status.code(), Some(2));
}
