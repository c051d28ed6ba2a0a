//! Black-box tests of the command-line front end.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reflchar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn compute_text_report() {
    let out = run(&["compute", "G37"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("chi: I30+I24+I20-I12-I10-I8"));
    assert!(text.contains("m: 240"));
}

#[test]
fn compute_rank_one() {
    let out = run(&["compute", "G(5,1,1)"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("chi: I5"));
}

#[test]
fn compute_reducible_note() {
    let out = run(&["compute", "G(2,2,2)"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("note: reducible"));
    assert!(text.contains("chi: 0"));
}

#[test]
fn compute_json_round_trips_byte_identically() {
    let out = run(&["compute", "G31", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let report: reflchar::report::ComputeReport = serde_json::from_str(&text).unwrap();
    assert_eq!(
        format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
        text
    );
    assert_eq!(report.chi, "I24+I20-I12-I8");
    // Coefficients are [d, a_d] pairs in descending d.
    assert_eq!(report.coefficients.first(), Some(&(24, 1)));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["compute", "G99"]).status.code(), Some(1));
    assert_eq!(run(&["compute", "nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["compute", "G(3,1,2)", "--m", "9"]).status.code(), Some(1));
    assert_eq!(run(&["sweep"]).status.code(), Some(1));
}

#[test]
fn sweep_family_includes_g333() {
    let out = run(&["sweep", "--family", "6", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().any(|l| l == "G(3,3,3) I6"));
}

#[test]
fn verify_small_family_exits_zero() {
    let out = run(&["verify", "--family", "3", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0 failures"));
}

#[test]
fn verify_empty_cap_warns_and_exits_zero() {
    let out = run(&["verify", "--cap", "1", "--family", "3", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stderr.clone())
        .unwrap()
        .contains("no groups within cap"));
}
