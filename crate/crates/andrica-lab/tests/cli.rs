//! End-to-end tests of the compiled binary: argument handling, output
//! shapes, warnings, exit codes, and the worker environment override.

use std::process::{Command, Output};

use andrica_lab::WORKERS_ENV_VAR;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_andrica-lab"))
        .args(args)
        .env_remove(WORKERS_ENV_VAR)
        .output()
        .expect("binary should spawn")
}

fn run_with_env(args: &[&str], workers: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_andrica-lab"))
        .args(args)
        .env(WORKERS_ENV_VAR, workers)
        .output()
        .expect("binary should spawn")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout should be UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr should be UTF-8")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no exit code (signal?)")
}

#[test]
fn solve_prints_the_six_digit_root() {
    let out = run(&["solve", "--p", "113", "--q", "127"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "x = 0.567148\n");
    let diag = stderr(&out);
    assert!(diag.contains("residual"), "diagnostics missing: {diag}");
    assert!(diag.contains("iterations"));
    assert!(!diag.contains("warning"));
}

#[test]
fn solve_replays_a_non_consecutive_row_with_warnings() {
    // Replay of the reference row that pairs 467 with composite 497.
    let out = run(&["solve", "--p", "467", "--q", "497"]);
    assert_eq!(code(&out), 0, "warnings must not change the exit code");
    assert_eq!(stdout(&out), "x = 0.547076\n");
    let diag = stderr(&out);
    assert!(diag.contains("warning: 497 is not prime"), "got: {diag}");
    assert!(
        diag.contains("the next prime after 467 is 479"),
        "got: {diag}"
    );
}

#[test]
fn solve_on_the_true_pair_is_warning_free() {
    let out = run(&["solve", "--p", "467", "--q", "479"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "x = 0.663219\n");
    assert!(!stderr(&out).contains("warning"));
}

#[test]
fn solve_rejects_a_bad_pair_with_exit_two() {
    let out = run(&["solve", "--p", "7", "--q", "7"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).starts_with("error: "));
}

#[test]
fn verify_clean_scan_exits_zero() {
    let out = run(&["verify", "--conjecture", "5", "--limit", "1000"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("conjecture 5:"), "got: {text}");
    assert!(text.contains("pairs: 167   violations: 0"), "got: {text}");
    assert!(text.contains("max ratio = 1.666667 at pair 2 (3, 5)"));
    assert!(stderr(&out).contains("scanned 167 pairs"));
}

#[test]
fn verify_with_violations_exits_one() {
    let out = run(&[
        "verify",
        "--conjecture",
        "2",
        "--limit",
        "1000",
        "--a",
        "0.99",
    ]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("violations: 166"), "got: {text}");
    assert!(
        text.contains("outside the safe region a < min x_root"),
        "got: {text}"
    );
}

#[test]
fn extremes_reports_both_records_and_the_trend() {
    let out = run(&["extremes", "--limit", "1000"]);
    assert_eq!(code(&out), 0, "roots in (0.5, 1] must exit clean");
    let text = stdout(&out);
    assert!(text.contains("pairs scanned: 167"), "got: {text}");
    assert!(text.contains("min x_root = 0.567148 at pair 30 (113, 127)"));
    assert!(text.contains("max x_root = 1.000000 at pair 1 (2, 3)"));
    assert!(text.contains("spearman(gap, x_root) = -0.860936"));
}

#[test]
fn csv_report_goes_to_the_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("reciprocal.csv");
    let out = run(&[
        "verify",
        "--conjecture",
        "6",
        "--limit",
        "100",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "", "the report must not also hit stdout");
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("n,p_n,p_next,gap,quantity,value,bound,holds\n"));
    assert!(written.ends_with('\n'));
    // The 25 primes below 100 form 24 pairs; plus the header line.
    assert_eq!(written.lines().count(), 25);
}

#[test]
fn json_report_parses_back() {
    let out = run(&["scan", "--limit", "30", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let document: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(document["rows"].as_array().unwrap().len(), 9);
    assert_eq!(document["config"]["limit"], 30);
}

#[test]
fn unwritable_out_path_exits_three() {
    let out = run(&[
        "scan",
        "--limit",
        "30",
        "--format",
        "csv",
        "--out",
        "/nonexistent-dir/report.csv",
    ]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("error: "));
}

#[test]
fn usage_errors_exit_two() {
    // Unknown flag, caught by the parser.
    assert_eq!(code(&run(&["scan", "--limit", "10", "--frobnicate"])), 2);
    // Conjecture 2 without its exponent parameter.
    let missing = run(&["verify", "--conjecture", "2", "--limit", "100"]);
    assert_eq!(code(&missing), 2);
    assert!(stderr(&missing).contains("needs the exponent"));
    // Conjecture number out of range.
    assert_eq!(
        code(&run(&["verify", "--conjecture", "9", "--limit", "100"])),
        2
    );
    // Tolerance above the supported ceiling.
    assert_eq!(
        code(&run(&["solve", "--p", "2", "--q", "3", "--tol", "0.5"])),
        2
    );
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&run(&["--help"])), 0);
    let version = run(&["--version"]);
    assert_eq!(code(&version), 0);
    assert!(stdout(&version).contains("andrica-lab"));
}

#[test]
fn worker_env_sets_the_pool_and_rejects_junk() {
    let fixed = run_with_env(&["extremes", "--limit", "1000"], "3");
    assert_eq!(code(&fixed), 0);
    assert!(stdout(&fixed).contains("min x_root = 0.567148 at pair 30 (113, 127)"));

    let auto = run_with_env(&["extremes", "--limit", "1000"], "auto");
    assert_eq!(code(&auto), 0);
    assert_eq!(
        stdout(&fixed),
        stdout(&auto),
        "worker count must not change results"
    );

    let junk = run_with_env(&["extremes", "--limit", "1000"], "frog");
    assert_eq!(code(&junk), 2);
    assert!(stderr(&junk).contains("error: "));
}
