use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdilog")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

#[test]
fn pentagon_passes() {
    let (code, v) = run_json(&["pentagon", "--depth", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert_eq!(v["checks"][0]["name"], "pentagon");
}

#[test]
fn maximal_green_sequences_of_a2() {
    let q = data("a2.json");
    let (code, v) = run_json(&["green", "--quiver", &q, "--max-len", "6", "--maximal"]);
    assert_eq!(code, 0);
    let seqs: Vec<Value> = v["output"]["sequences"].as_array().unwrap().iter().map(|s| s["seq"].clone()).collect();
    assert_eq!(seqs, vec![serde_json::json!([1, 2]), serde_json::json!([2, 1, 2])]);
}

#[test]
fn kronecker_fails_with_counterexample() {
    let (code, v) = run_json(&["kronecker", "--depth", "3"]);
    assert_eq!(code, 1);
    let c = &v["checks"][0];
    assert_eq!(c["pass"], false);
    assert_eq!(c["counterexample"]["monomial"], serde_json::json!([1, 1]));
    assert!(c["reproduce"].as_str().unwrap().starts_with("qdilog kronecker"));
}

#[test]
fn kronecker_refuses_deep_truncation() {
    let out = run(&["kronecker", "--depth", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds"));
}

#[test]
fn tropical_compare_accepts_sequence_files() {
    let q = data("a2.json");
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"seq":[2,1,2]}}"#).unwrap();
    let path = f.path().to_string_lossy().into_owned();
    let (code, v) = run_json(&["tropical-compare", "--quiver", &q, "--seq1", "1,2", "--seq2", &path, "--depth", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["output"]["frozen_iso"], true);
}

#[test]
fn tropical_compare_reports_difference() {
    let q = data("a2.json");
    let (code, v) = run_json(&["tropical-compare", "--quiver", &q, "--seq1", "1,2", "--seq2", "2,1", "--depth", "4"]);
    assert_eq!(code, 1);
    assert_eq!(v["output"]["frozen_iso"], false);
}

#[test]
fn reineke_and_hall_on_a2() {
    let q = data("a2.json");
    let two = data("a2_two_stables.json");
    let three = data("a2_three_stables.json");
    for z in [&two, &three] {
        let (code, _) = run_json(&["reineke", "--quiver", &q, "--charges", z, "--depth", "6"]);
        assert_eq!(code, 0);
    }
    let (code, v) = run_json(&["hall", "--quiver", &q, "--p", "2", "--bound", "2,2", "--charges", &two, "--charges", &three]);
    assert_eq!(code, 0, "{v}");
}

#[test]
fn corollary_all_a3_orientations() {
    let (code, v) = run_json(&["corollary", "--type", "A3", "--depth", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"].as_array().unwrap().len(), 4);
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(run(&["green", "--quiver", "/nonexistent.json", "--max-len", "3"]).status.code(), Some(2));
    assert_eq!(run(&["corollary", "--type", "Z9"]).status.code(), Some(2));
    assert_eq!(run(&["formulas", "--m-range", "5..x"]).status.code(), Some(2));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["dt", "--quiver", &data("a2.json"), "--depth", "3"];
    let a = run_json(&args).1;
    let b = run_json(&args).1;
    assert_eq!(a, b);
    assert!(a.get("wall_ms").is_none());
}

#[test]
fn time_flag_adds_wall_clock() {
    let (_, v) = run_json(&["--time", "pentagon", "--depth", "2"]);
    assert!(v["wall_ms"].is_u64());
}

#[test]
fn recorded_steps_are_rechecked() {
    let q = data("a2.json");
    let write = |text: &str| {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    };
    let good = write(r#"{"seq":[1,2],"steps":[{"beta":[1,0],"eps":1},{"beta":[0,1],"eps":1}]}"#);
    let bad = write(r#"{"seq":[1,2],"steps":[{"beta":[1,0],"eps":1},{"beta":[1,1],"eps":1}]}"#);
    let path = |f: &tempfile::NamedTempFile| f.path().to_string_lossy().into_owned();
    let (code, _) = run_json(&["tropical-compare", "--quiver", &q, "--seq1", &path(&good), "--seq2", "2,1,2", "--depth", "6"]);
    assert_eq!(code, 0);
    let out = run(&["tropical-compare", "--quiver", &q, "--seq1", &path(&bad), "--seq2", "2,1,2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("recorded steps"));
}
