mod common;

use std::process::{Command, Output};

use common::{fixture, fixture_path};

fn qf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qf"))
        .args(args)
        .env_remove("QF_DEFAULT_JOBS")
        .output()
        .expect("qf runs")
}

fn path(name: &str) -> String {
    fixture_path(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_reports_cyclic_type() {
    let o = qf(&["check", &path("table1.txt")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cyclic type (6,2), connected"));
}

#[test]
fn check_exit_codes() {
    assert_eq!(qf(&["check", &path("table1_corrupt.txt")]).status.code(), Some(2));
    assert_eq!(qf(&["check", &path("empty.txt")]).status.code(), Some(3));
    assert_eq!(qf(&["check", "/no/such/file"]).status.code(), Some(3));
    assert_eq!(qf(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(qf(&["--help"]).status.code(), Some(0));
}

#[test]
fn machine_format_is_key_value() {
    let o = qf(&["--format", "machine", "check", &path("table5.txt")]);
    let out = stdout(&o);
    assert!(out.lines().all(|l| l.contains('=')), "{out}");
    assert!(out.contains("cyclic_type=5,3"));
    assert!(out.contains("connected=no"));
}

#[test]
fn construct_matches_fixtures() {
    assert_eq!(stdout(&qf(&["construct", "dihedral", "4"])), fixture("table3.txt"));
    assert_eq!(stdout(&qf(&["construct", "q62"])), fixture("table1.txt"));
    assert_eq!(qf(&["construct", "dihedral"]).status.code(), Some(3));
}

#[test]
fn quotient_by_association() {
    let o = qf(&["quotient", &path("table3.txt")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("{1,3} | {1,3} {1,3}"));
    let bad = qf(&["quotient", &path("table1.txt"), "--partition", "{1,2} {3,4} {5,6}"]);
    assert_ne!(bad.status.code(), Some(0));
}

#[test]
fn iso_exit_codes() {
    let yes = qf(&["iso", &path("table1.txt"), &path("table1.txt")]);
    assert_eq!(yes.status.code(), Some(0));
    assert!(stdout(&yes).contains("1 -> "));
    assert_eq!(qf(&["iso", &path("table1.txt"), &path("table5.txt")]).status.code(), Some(1));
}

#[test]
fn surgery_commands() {
    let o = qf(&["extract", &path("table5.txt"), "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("4\n"));
    // commutes with every permutation but does not preserve them
    assert_eq!(qf(&["adjoin", &path("table1.txt"), "(1 3)(2 4)(5 6)"]).status.code(), Some(2));
    assert_eq!(qf(&["adjoin", &path("table1.txt"), "(1 2)"]).status.code(), Some(2));
}

#[test]
fn enumerate_machine_line() {
    let o = qf(&["--format", "machine", "enumerate", "--n", "6", "--f", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.starts_with("result n=6 f=2 classes=1 ") && l.ends_with("exhaustive=yes")));
    let empty = qf(&["enumerate", "--n", "28", "--f", "7"]);
    assert_eq!(empty.status.code(), Some(0));
    assert!(stdout(&empty).contains("gcd"));
    assert!(stdout(&empty).contains("classes=0"));
}

#[test]
fn enumerate_budget_marks_partial() {
    let o = qf(&["enumerate", "--n", "7", "--f", "5", "--mode", "general", "--budget-nodes", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exhaustive=no"));
}

#[test]
fn reproduce_single_claim() {
    let o = qf(&["reproduce", "GCD-28-7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS GCD-28-7"));
    assert_eq!(qf(&["reproduce", "nope"]).status.code(), Some(3));
}
