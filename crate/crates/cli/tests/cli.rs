use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use clap::Parser;
use serde_json::Value;

use hamcount_cli::{run, RunConfig, EXIT_OK, EXIT_USAGE};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn exec(args: &[&str]) -> hamcount_cli::Outcome {
    let mut argv = vec!["hamcount"];
    argv.extend_from_slice(args);
    run(&RunConfig::try_parse_from(argv).expect("arguments parse"))
}

fn json(args: &[&str]) -> Value {
    let mut argv = vec!["--format", "json"];
    argv.extend_from_slice(args);
    let out = exec(&argv);
    assert_eq!(out.exit_code, EXIT_OK, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn binary(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hamcount"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn k4_has_six_cycles() {
    let k4 = data("k4.txt");
    assert_eq!(json(&["cycles", &k4])["count"], "6");
    assert_eq!(json(&["cycles", &k4, "--brute"])["count"], "6");
    let v = json(&["cycles", &k4]);
    assert_eq!(v["method"], "hc_identity");
    assert_eq!(v["terms_evaluated"], 8);
    // loops never change the cycle count
    assert_eq!(json(&["cycles", &k4, "--diag", "5"])["count"], "6");
}

#[test]
fn text_output_leads_with_count() {
    let out = exec(&["cycles", &data("k4.txt")]);
    assert!(out.stdout.starts_with("count: 6\n"), "{}", out.stdout);
}

#[test]
fn paths_and_trees() {
    let k4 = data("k4.txt");
    // 4! orderings of the vertices, each ending on a unit loop
    assert_eq!(json(&["paths", &k4, "--diag", "1"])["count"], "24");
    assert_eq!(
        json(&["paths", &k4, "--diag", "1", "--brute"])["count"],
        "24"
    );
    // Cayley: 4^3 rooted trees with unit root weight
    assert_eq!(json(&["trees", &k4, "--root-weight", "1"])["count"], "64");
    assert_eq!(
        json(&["trees", &k4, "--root-weight", "1", "--root", "2"])["count"],
        "16"
    );
    assert_eq!(
        json(&["trees", &k4, "--root-weight", "1", "--root", "2", "--brute"])["count"],
        "16"
    );
    assert_eq!(json(&["trees", &k4])["count"], "0");
}

#[test]
fn edge_lists_and_undirected() {
    let ring = data("ring4.edges");
    assert_eq!(json(&["cycles", &ring])["count"], "1");
    // both orientations of the ring
    assert_eq!(json(&["cycles", &ring, "--undirected"])["count"], "2");
    assert_eq!(
        json(&["cycles", &ring, "--input-format", "edgelist"])["count"],
        "1"
    );
}

#[test]
fn thread_count_does_not_change_counts() {
    let k4 = data("k4.txt");
    assert_eq!(json(&["--threads", "4", "cycles", &k4])["count"], "6");
    let out = exec(&["--threads", "0", "cycles", &k4]);
    assert_eq!(out.exit_code, EXIT_USAGE);
}

#[test]
fn list_cycles_three() {
    let out = exec(&["list", "cycles", "3"]);
    assert_eq!(out.exit_code, EXIT_OK);
    assert_eq!(
        out.stdout,
        "1 * a(1,2)^1 * a(2,3)^1 * a(3,1)^1\n1 * a(1,3)^1 * a(2,1)^1 * a(3,2)^1\n"
    );
    assert_eq!(exec(&["list", "identity", "3"]).stdout, out.stdout);
    assert_eq!(exec(&["list", "derivative", "3"]).stdout, out.stdout);
    assert_eq!(exec(&["list", "trees", "3"]).stdout.lines().count(), 9);
    let v = json(&["list", "cycles", "4"]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 6);
}

#[test]
fn list_beyond_cap_is_a_usage_error() {
    let out = exec(&["list", "identity", "9"]);
    assert_eq!(out.exit_code, EXIT_USAGE);
    let err: Value = serde_json::from_str(&out.stderr).unwrap();
    assert!(err["error"]["kind"].is_string());
}

#[test]
fn verify_reports_each_check() {
    let v = json(&["verify", "--max-n", "4", "--samples", "3"]);
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().len() > 20);
}

#[test]
fn verify_text_summary() {
    let out = exec(&["verify", "--max-n", "3", "--samples", "2"]);
    assert_eq!(out.exit_code, EXIT_OK);
    assert!(out.stdout.lines().all(|l| !l.starts_with("FAIL")));
    assert!(out.stdout.contains("0 failed"));
}

#[test]
fn bench_table() {
    let out = exec(&["bench", "--min-n", "3", "--max-n", "6", "--brute-max", "5"]);
    assert_eq!(out.exit_code, EXIT_OK);
    assert_eq!(out.stdout.lines().count(), 5);
    let v = json(&["bench", "--min-n", "3", "--max-n", "4"]);
    assert_eq!(v["rows"][0]["agree"], true);
}

#[test]
fn parse_errors_exit_two_with_json_object() {
    let out = binary(&["cycles", "-"], "3\n1 2 3\n4 5 6\n7 8");
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "parse_error");
    let msg = err["error"]["message"].as_str().unwrap();
    assert!(msg.contains("expected 9 entries, found 8"), "{msg}");
}

#[test]
fn bad_vertex_and_missing_file() {
    let out = binary(&["cycles", "-"], "n 2\n1 3\n");
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&out.stderr).contains("vertex 3 out of range"));
    let out = exec(&["cycles", "/nonexistent/matrix.txt"]);
    assert_eq!(out.exit_code, EXIT_USAGE);
}

#[test]
fn unknown_arguments_exit_two() {
    let out = binary(&["cycles", "--no-such-flag"], "");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn paths_need_two_vertices() {
    let out = binary(&["paths", "-"], "1\n1");
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
}

#[test]
fn stdin_binary_round_trip() {
    let out = binary(
        &["--format", "json", "cycles", "-"],
        "3\n1 1 1\n1 1 1\n1 1 1",
    );
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], "2");
}
