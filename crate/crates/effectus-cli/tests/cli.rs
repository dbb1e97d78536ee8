//! End-to-end tests of the command-line front end: exit codes, table
//! contents, and byte-level determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_effectus"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn coin_flip_prints_exact_halves() {
    let out = run(&[
        "run-experiment",
        fixture("coin_flip.json").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("heads\t1/2"), "{text}");
    assert!(text.contains("tails\t1/2"), "{text}");
}

#[test]
fn disturbed_instrument_table_contains_a_quarter() {
    let out = run(&[
        "run-experiment",
        fixture("disturbed_instrument.json").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("*\t0\t1\t0.25"), "{text}");
    assert!(text.contains("*\t1\t0\t0\n"), "{text}");
}

#[test]
fn ground_state_assertion_is_certain() {
    let out = run(&[
        "run-experiment",
        fixture("ground_state_born.json").to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON output");
    assert_eq!(parsed["seed"], 1);
    let rows = parsed["tables"][0]["rows"].as_array().unwrap();
    let values: Vec<&str> = rows.iter().map(|r| r["value"].as_str().unwrap()).collect();
    assert_eq!(values, vec!["1", "0"]);
}

#[test]
fn parse_errors_exit_two() {
    let dir = std::env::temp_dir().join("effectus-cli-test-parse");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = run(&["run-experiment", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // missing file is also a parse-level failure
    let out = run(&["run-experiment", "/nonexistent/experiment.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn type_mismatches_exit_three() {
    let out = run(&[
        "run-experiment",
        fixture("ill_typed.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    // instance flag disagreeing with the file is a type mismatch too
    let out = run(&[
        "run-experiment",
        fixture("coin_flip.json").to_str().unwrap(),
        "--instance",
        "quantum",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn tolerance_violations_exit_four() {
    // each channel step passes validation within the morphism tolerance,
    // but the chained table mass drifts past it
    let v = 1.0 + 6e-8;
    let zero = [0.0, 0.0];
    let step = serde_json::json!({
        "kind": "channel",
        "morphism":
            {"dom": {"blocks": [2]}, "cod": {"blocks": [2]},
             "choi": {"(0,0)": [
                 [[v, 0.0], zero, zero, [v, 0.0]],
                 [zero, zero, zero, zero],
                 [zero, zero, zero, zero],
                 [[v, 0.0], zero, zero, [v, 0.0]]
             ]}}
    });
    let doc = serde_json::json!({
        "instance": "quantum",
        "object": {"blocks": [2]},
        "prep": {"kind": "maximally_mixed"},
        "steps": [step.clone(), step.clone(), step],
        "queries": ["joint"]
    });
    let dir = std::env::temp_dir().join("effectus-cli-test-tolerance");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("drift.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = run(&["run-experiment", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4), "{:?}", out);
}

#[test]
fn law_reports_are_byte_identical_for_equal_seeds() {
    let a = run(&["check-laws", "--suite", "duality", "--seed", "7"]);
    let b = run(&["check-laws", "--suite", "duality", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["check-laws", "--suite", "duality", "--seed", "8"]);
    assert!(c.status.success());
}

#[test]
fn algebra_suite_passes_and_reports_json() {
    let out = run(&["check-laws", "--suite", "algebra", "--format", "json"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["passed"], true);
    assert_eq!(parsed["seed"], 1);
    let suites = parsed["suites"].as_array().unwrap();
    assert!(!suites.is_empty());
    // every law entry carries id, statement, and regime
    for suite in suites {
        for law in suite["laws"].as_array().unwrap() {
            assert!(law["id"].is_string());
            assert!(law["statement"].is_string());
            assert!(law["regime"]["kind"].is_string());
        }
    }
}

#[test]
fn totalization_suite_passes_from_the_cli() {
    let out = run(&["check-laws", "--suite", "totalization"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("caus.nat-functorial"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn injected_bad_table_fails_with_a_counterexample() {
    let dir = std::env::temp_dir().join("effectus-cli-test-table");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad_table.json");
    std::fs::write(
        &path,
        r#"{"carrier": 3, "zero": 0, "top": 2,
            "sum": [[0, 1, 2], [1, 2, 2], [2, 2, null]]}"#,
    )
    .unwrap();
    let out = run(&[
        "check-laws",
        "--suite",
        "algebra",
        "--algebra-table",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("orthosupplement"), "{text}");

    // a well-formed table passes
    let good = dir.join("good_table.json");
    std::fs::write(
        &good,
        r#"{"carrier": 2, "zero": 0, "top": 1, "sum": [[0, 1], [1, null]]}"#,
    )
    .unwrap();
    let out = run(&[
        "check-laws",
        "--suite",
        "algebra",
        "--algebra-table",
        good.to_str().unwrap(),
    ]);
    assert!(out.status.success());
}

#[test]
fn nonpositive_tolerance_is_rejected() {
    let out = run(&["check-laws", "--suite", "algebra", "--eps=-1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["check-laws", "--suite", "algebra", "--eps=0"]);
    assert_eq!(out.status.code(), Some(2));
}
