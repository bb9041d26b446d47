//! End-to-end checks of the command-line surface: pipelines, formats,
//! and the exit-code contract.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cgcube"))
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("wait")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn gen_notch_gap_pipeline() {
    let gen = bin().args(["gen", "support-k", "--n", "4", "--k", "2"]).output().unwrap();
    assert!(gen.status.success());
    let pts = stdout_of(&gen);
    assert!(pts.starts_with("n=4\n"));

    let notch = run_with_stdin(&["notch", "-"], &pts);
    assert!(notch.status.success());
    assert_eq!(stdout_of(&notch), "notch 2\n");

    let gap = run_with_stdin(&["gap", "-"], &pts);
    assert!(gap.status.success());
    assert!(stdout_of(&gap).starts_with("gap 2\n"));
}

#[test]
fn rank_of_two_point_relaxation() {
    let pts = "n=2\n00\n11\n";
    let worst = run_with_stdin(&["gen", "worst", "-"], pts);
    assert!(worst.status.success());
    let sys = stdout_of(&worst);
    assert!(sys.contains("ge "));

    let rank = run_with_stdin(&["rank", "-"], &sys);
    assert!(rank.status.success());
    let text = stdout_of(&rank);
    assert!(text.ends_with("rank 1\n"), "got: {text}");
}

#[test]
fn json_output_is_byte_stable() {
    let pts = "n=3\n110\n101\n011\n111\n";
    let a = run_with_stdin(&["gap", "-", "--format", "json"], pts);
    let b = run_with_stdin(&["gap", "-", "--format", "json"], pts);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["gap"], serde_json::json!(2));
}

#[test]
fn malformed_input_exits_2() {
    let out = run_with_stdin(&["notch", "-"], "n=3\n12x\n");
    assert_eq!(out.status.code(), Some(2));
    let out = run_with_stdin(&["gap", "-"], "no header\n");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exhausted_budget_exits_3() {
    let pts = "n=3\n111\n000\n";
    let worst = run_with_stdin(&["gen", "worst", "-"], pts);
    let sys = stdout_of(&worst);
    let out = run_with_stdin(&["rank", "-", "--enum-budget", "5"], &sys);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unconverged_rank_cap_exits_1() {
    let pts = "n=3\n111\n000\n";
    let worst = run_with_stdin(&["gen", "worst", "-"], pts);
    let sys = stdout_of(&worst);
    let out = run_with_stdin(&["rank", "-", "--max-rank", "0"], &sys);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("cap reached"));
}

#[test]
fn closure_output_is_reparseable() {
    let sys = "n=2\nge 2 2 1\nge -2 2 -1\nge 2 -2 -1\nge -2 -2 -3\n";
    let out = run_with_stdin(&["closure", "-"], sys);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let second = run_with_stdin(&["closure", "-"], &text);
    assert!(second.status.success(), "closure output failed to reparse");
}

#[test]
fn depth_reports_rounds_until_valid() {
    let pts = "n=2\n00\n11\n";
    let worst = run_with_stdin(&["gen", "worst", "-"], pts);
    let sys = stdout_of(&worst);
    let out = run_with_stdin(&["depth", "-", "--row", "1 -1 0"], &sys);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "depth 1\n");
}

#[test]
fn oracle_opt_reports_point_cost_calls() {
    let pts = "n=3\n110\n011\n";
    let out = run_with_stdin(&["oracle-opt", "-", "--cost", "1 1/2 -1"], pts);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("point 011"), "got: {text}");
    assert!(text.contains("cost -1/2"), "got: {text}");
}

#[test]
fn gen_badfacet_emits_facet_comment() {
    let out = bin().args(["gen", "badfacet", "--n", "2"]).output().unwrap();
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.starts_with("# facet "));
    assert!(text.contains("n=6\n"));
}

#[test]
fn verify_runs_a_fast_suite() {
    let out = bin().args(["verify", "oracle", "--format", "json"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["suite"], serde_json::json!("oracle"));
    assert_eq!(v["counts"]["fail"], serde_json::json!(0));
}

#[test]
fn unknown_suite_exits_2() {
    let out = bin().args(["verify", "bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
