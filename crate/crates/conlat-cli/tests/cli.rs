//! End-to-end checks of the command dispatcher: exit codes, file handling,
//! limits, and the stability of the verify report.

use std::fs;
use std::path::PathBuf;

use conlat_cli::{run_command, EXIT_PASS, EXIT_USAGE, EXIT_WITNESS};

fn args(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("conlat-test-{}-{name}", std::process::id()));
    p
}

fn write_builtin(name: &str) -> PathBuf {
    let (code, text) = run_command(&args(&["print", "--name", name]));
    assert_eq!(code, EXIT_PASS);
    let path = temp_path(&format!("{name}.alg"));
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn con_prints_three_congruences_for_z4() {
    let path = write_builtin("z4");
    let (code, out) = run_command(&args(&["con", "--alg", path.to_str().unwrap()]));
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("3 congruences"));
    assert!(out.contains("0,2|1,3"));
    fs::remove_file(path).ok();
}

#[test]
fn con_writes_dot_output() {
    let path = write_builtin("klein4");
    let dot_path = temp_path("klein4.dot");
    let (code, _) = run_command(&args(&[
        "con",
        "--alg",
        path.to_str().unwrap(),
        "--dot",
        dot_path.to_str().unwrap(),
    ]));
    assert_eq!(code, EXIT_PASS);
    let dot = fs::read_to_string(&dot_path).unwrap();
    assert!(dot.starts_with("digraph con {"));
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 6);
    fs::remove_file(path).ok();
    fs::remove_file(dot_path).ok();
}

#[test]
fn dense_reports_witness_with_exit_one() {
    let path = write_builtin("z6");
    // the mod-2 kernel is not dense: the mod-3 kernel meets it at zero
    let (code, out) = run_command(&args(&[
        "dense",
        "--alg",
        path.to_str().unwrap(),
        "--theta",
        "0,2,4|1,3,5",
    ]));
    assert_eq!(code, EXIT_WITNESS);
    assert!(out.contains("witness"));
    let (code, _) = run_command(&args(&[
        "dense",
        "--alg",
        path.to_str().unwrap(),
        "--theta",
        "0,1,2,3,4,5",
    ]));
    assert_eq!(code, EXIT_PASS);
    fs::remove_file(path).ok();
}

#[test]
fn comm_rejects_non_congruence_with_usage_exit() {
    let path = write_builtin("z4");
    let (code, out) = run_command(&args(&[
        "comm",
        "--alg",
        path.to_str().unwrap(),
        "--alpha",
        "0,1",
        "--beta",
        "0,2|1,3",
    ]));
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("not a congruence"));
    fs::remove_file(path).ok();
}

#[test]
fn max_size_is_a_hard_refusal() {
    let path = write_builtin("z8");
    let (code, out) = run_command(&args(&[
        "con",
        "--alg",
        path.to_str().unwrap(),
        "--max-size",
        "4",
    ]));
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("exceeding the limit"));
    fs::remove_file(path).ok();
}

#[test]
fn cube_refuses_when_the_cube_would_exceed_the_limit() {
    let path = write_builtin("d4");
    let (code, out) = run_command(&args(&[
        "cube",
        "--alg",
        path.to_str().unwrap(),
        "--term",
        "group_d",
        "--max-size",
        "100",
    ]));
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("512"), "the refusal names the required size: {out}");
    fs::remove_file(path).ok();
}

#[test]
fn verify_single_check_and_unknown_check() {
    let (code, out) = run_command(&args(&["verify", "--check", "fact5"]));
    assert_eq!(code, EXIT_PASS, "{out}");
    assert!(out.contains("#check name=fact5"));
    let (code, out) = run_command(&args(&["verify", "--check", "nope"]));
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("unknown check"));
}

#[test]
fn verify_with_corpus_filter() {
    let (code, out) = run_command(&args(&["verify", "--check", "fact6", "--corpus", "z4"]));
    assert_eq!(code, EXIT_PASS, "{out}");
    assert!(out.contains("instances=1"));
}

#[test]
fn split_on_d4_exits_with_witness() {
    let path = write_builtin("d4");
    let (code, out) = run_command(&args(&["split", "--alg", path.to_str().unwrap()]));
    assert_eq!(code, EXIT_WITNESS);
    assert!(out.contains("0,2|1,3|4,6|5,7"));
    fs::remove_file(path).ok();
}

#[test]
fn parse_error_carries_position() {
    let path = temp_path("broken.alg");
    fs::write(&path, "algebra broken\nsize 4\nop f 1\n0 1 7 3\nend\n").unwrap();
    let (code, out) = run_command(&args(&["con", "--alg", path.to_str().unwrap()]));
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("4:"), "error names the line: {out}");
    fs::remove_file(path).ok();
}

#[test]
fn cube_on_d4_reports_a_proper_essential_extension() {
    let path = write_builtin("d4");
    let (code, out) = run_command(&args(&[
        "cube",
        "--alg",
        path.to_str().unwrap(),
        "--term",
        "group_d",
    ]));
    assert_eq!(code, EXIT_PASS, "{out}");
    assert!(out.contains("proper: true"));
    assert!(out.contains("essential: true"));
    assert!(out.contains("validated on: d4"));
    fs::remove_file(path).ok();
}

#[test]
fn verify_interval_check_passes() {
    let (code, out) = run_command(&args(&["verify", "--check", "lemma21"]));
    assert_eq!(code, EXIT_PASS, "{out}");
    assert!(out.contains("check lemma21: pass"));
}

#[test]
fn usage_on_missing_arguments() {
    let (code, out) = run_command(&args(&[]));
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("usage:"));
    let (code, _) = run_command(&args(&["comm", "--alpha", "0,1"]));
    assert_eq!(code, EXIT_USAGE);
}
