//! End-to-end smoke tests for the command-line interface: exit codes,
//! output formats, and determinism of seeded runs.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tau-lattice"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn compute_schur_known_value() {
    let out = run(&["compute", "schur", "--lambda", "2,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("1/3 t1^3 - t3"), "{}", stdout(&out));
}

#[test]
fn compute_qschur_known_value() {
    let out = run(&["compute", "qschur", "--mu", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"poly\":\"t1\""), "{}", stdout(&out));
}

#[test]
fn expand_emits_terms() {
    let out = run(&["expand", "--lambda", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1, "{text}");
    assert!(text.contains("1/2"), "{text}");
}

#[test]
fn expand_rejects_mixed_selectors() {
    let out = run(&["expand", "--lambda", "2", "--alpha", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_and_is_deterministic() {
    let a = run(&["verify", "schur-q", "--max-weight", "3"]);
    let b = run(&["verify", "schur-q", "--max-weight", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).lines().all(|l| l.contains("\"pass\":true")));
}

#[test]
fn verify_csv_format() {
    let out = run(&["verify", "square", "--max-weight", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("identity,instance,pass,residual"), "{text}");
}

#[test]
fn verify_corrupt_exits_one() {
    let out = run(&["verify", "square", "--max-weight", "3", "--corrupt"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("\"pass\":false"));
}

#[test]
fn verify_oracle_agrees() {
    let out = run(&["verify", "schur-q", "--max-weight", "4", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bad_minor_size_is_usage_error() {
    let out = run(&["verify", "det-pf", "--n", "3", "--r", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_partition_is_usage_error() {
    let out = run(&["compute", "schur", "--lambda", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fuzz_smoke() {
    let out = run(&["fuzz", "--seed", "1", "--budget", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().all(|l| l.contains("\"pass\":true")));
}
