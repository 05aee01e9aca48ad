//! End-to-end checks of the binary: exit codes, piping, determinism,
//! and round-tripping oriented output through `verify`.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mixorient"))
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn mixorient");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const TRIANGLE: &str = "p mixed 3 3\ne 0 1\ne 1 2\ne 2 0\n";
const BRIDGE_PATH: &str = "p mixed 3 2\ne 0 1\ne 1 2\n";
const FOUR_CYCLE: &str = "p mixed 4 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n";

#[test]
fn check_reports_orientability_and_exit_codes() {
    let ok = run_with_stdin(&["check"], TRIANGLE);
    assert_eq!(ok.status.code(), Some(0));
    let text = stdout_of(&ok);
    assert!(text.contains("strongly_orientable = true"));
    assert!(text.contains("radius = 1"));
    assert!(text.contains("eta = 3"));

    let bad = run_with_stdin(&["check"], BRIDGE_PATH);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout_of(&bad).contains("bridge_count = 2"));
}

#[test]
fn parse_errors_exit_two() {
    let out = run_with_stdin(&["check"], "p mixed 2 1\nq 0 1\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2"));

    let loop_file = run_with_stdin(&["orient"], "p mixed 2 1\ne 1 1\n");
    assert_eq!(loop_file.status.code(), Some(2));
}

#[test]
fn orient_refuses_unorientable_input() {
    let out = run_with_stdin(&["orient"], BRIDGE_PATH);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gen_pipes_into_orient_within_bound() {
    let gen = run_with_stdin(&["gen", "--family", "lower-bound", "--r", "3"], "");
    assert_eq!(gen.status.code(), Some(0));
    let graph = stdout_of(&gen);
    let orient = run_with_stdin(&["orient"], &graph);
    assert_eq!(orient.status.code(), Some(0));
    let text = stdout_of(&orient);
    let radius_after: usize = text
        .lines()
        .find_map(|l| l.strip_prefix("radius_after = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(radius_after <= 17);
    assert!(text.contains("bound_floor = 17"));

    // Byte-identical reruns.
    let again = run_with_stdin(&["orient"], &graph);
    assert_eq!(orient.stdout, again.stdout);
}

#[test]
fn orient_output_verifies_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let graph_path = dir.path().join("g.mix");
    let out_path = dir.path().join("oriented.mix");
    let report_path = dir.path().join("report.txt");
    std::fs::write(&graph_path, FOUR_CYCLE).unwrap();

    let orient = bin()
        .args([
            "orient",
            graph_path.to_str().unwrap(),
            "--out",
            out_path.to_str().unwrap(),
            "--report",
            report_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(orient.status.code(), Some(0));
    let report = std::fs::read_to_string(&report_path).unwrap();
    assert!(report.contains("radius_after = 3"));

    let verify = bin()
        .args([
            "verify",
            graph_path.to_str().unwrap(),
            out_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(verify.status.code(), Some(0));
    let text = stdout_of(&verify);
    assert!(text.contains("valid = true"));
    assert!(text.contains("radius_within_bound = true"));
}

#[test]
fn verify_rejects_tampered_orientation() {
    let dir = tempfile::tempdir().unwrap();
    let graph_path = dir.path().join("g.mix");
    let bad_path = dir.path().join("bad.mix");
    std::fs::write(&graph_path, FOUR_CYCLE).unwrap();
    // Alternating orientation: total but not strong.
    std::fs::write(&bad_path, "p mixed 4 4\na 0 1\na 2 1\na 2 3\na 0 3\n").unwrap();
    let out = bin()
        .args([
            "verify",
            graph_path.to_str().unwrap(),
            bad_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("strong = false"));
    assert!(text.contains("valid = false"));

    // Mismatched edge list.
    let mismatched = dir.path().join("other.mix");
    std::fs::write(&mismatched, "p mixed 4 4\na 0 2\na 2 1\na 2 3\na 0 3\n").unwrap();
    let out = bin()
        .args([
            "verify",
            graph_path.to_str().unwrap(),
            mismatched.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("source_match = false"));
}

#[test]
fn oracle_reports_exact_radius() {
    let out = run_with_stdin(&["oracle"], FOUR_CYCLE);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("oriented_radius = 3"));
    assert!(text.contains("explored_assignments = 16"));
}

#[test]
fn oracle_cap_is_a_domain_error() {
    let out = run_with_stdin(&["oracle", "--max-free", "2"], FOUR_CYCLE);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gen_random_is_deterministic_and_orientable() {
    let args = ["gen", "--family", "random", "--n", "9", "--frac", "0.7", "--seed", "11"];
    let a = run_with_stdin(&args, "");
    let b = run_with_stdin(&args, "");
    assert_eq!(a.stdout, b.stdout);
    let check = run_with_stdin(&["check"], &stdout_of(&a));
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn gen_usage_errors_exit_two() {
    let missing_r = run_with_stdin(&["gen", "--family", "lower-bound"], "");
    assert_eq!(missing_r.status.code(), Some(2));
    let missing_n = run_with_stdin(&["gen", "--family", "random"], "");
    assert_eq!(missing_n.status.code(), Some(2));
}

#[test]
fn eta_algorithm_reports_eta() {
    let out = run_with_stdin(&["orient", "--algorithm", "eta"], TRIANGLE);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("eta = 3"));
    assert!(text.contains("radius_after = 2"));
}
