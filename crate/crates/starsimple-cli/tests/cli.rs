//! End-to-end tests of the command-line interface, driving the real binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_starsimple"))
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn bounds_table_prints_the_known_values() {
    let out = run(&["bounds", "--k", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for val in ["1", "2", "5", "16", "65"] {
        assert!(text.contains(val), "missing {val} in:\n{text}");
    }
    let out = run(&["bounds", "--n", "6"]);
    let text = stdout(&out);
    assert!(text.contains("6") && text.contains("720"), "{text}");
}

#[test]
fn construct_analyze_roundtrip() {
    let dir = std::env::temp_dir().join("starsimple-cli-test-construct");
    std::fs::create_dir_all(&dir).unwrap();
    let ted = dir.join("d3.ted");
    let out = run(&[
        "construct",
        "--kind",
        "doubling",
        "--k",
        "3",
        "--out",
        ted.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&["analyze", ted.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 8);
    assert_eq!(v["hitting_number"], 3);
    assert_eq!(v["deadlock"], false);
    assert_eq!(v["spiral"], false);
    assert_eq!(v["admissible_at_hitting_number"], true);
}

#[test]
fn analyze_reports_the_spiral_construction() {
    let dir = std::env::temp_dir().join("starsimple-cli-test-spiral");
    std::fs::create_dir_all(&dir).unwrap();
    let ted = dir.join("s.ted");
    assert!(run(&[
        "construct",
        "--kind",
        "spiral",
        "--out",
        ted.to_str().unwrap()
    ])
    .status
    .success());
    let out = run(&["analyze", ted.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 6);
    assert_eq!(v["spiral"], true);
    assert_eq!(v["deadlock"], false);
}

#[test]
fn verify_exit_codes_distinguish_pass_violation_and_format_error() {
    let f = fixtures();
    let ok = run(&["verify", f.join("k5_convex.gdr").to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));

    let bad = run(&["verify", f.join("adjacent_crossing.gdr").to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("AdjacentCrossing"));

    let twist = run(&["verify", f.join("empty_twist.gdr").to_str().unwrap()]);
    assert_eq!(twist.status.code(), Some(1));
    assert!(stdout(&twist).contains("EmptyLens"));

    let dir = std::env::temp_dir().join("starsimple-cli-test-verify");
    std::fs::create_dir_all(&dir).unwrap();
    let mangled = dir.join("broken.gdr");
    std::fs::write(&mangled, "{123;").unwrap();
    let broken = run(&["verify", mangled.to_str().unwrap()]);
    assert_eq!(broken.status.code(), Some(2));
}

#[test]
fn verify_writes_a_json_report() {
    let dir = std::env::temp_dir().join("starsimple-cli-test-report");
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("k6.json");
    let out = run(&[
        "verify",
        fixtures().join("k6_convex.gdr").to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["total_crossings"], 15);
    assert_eq!(v["pass"], true);
}

#[test]
fn render_is_byte_identical_across_runs() {
    let a = run(&["render", "--kind", "twist", "--m", "3"]);
    let b = run(&["render", "--kind", "twist", "--m", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("<svg"));
}

#[test]
fn search_reports_the_exact_maximum_for_k2() {
    let out = run(&["search", "--k", "2", "--budget", "1e6", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["best"], 5);
    assert_eq!(v["exhaustive"], true);
}

#[test]
fn search_checkpoint_resume_reaches_the_same_answer() {
    let dir = std::env::temp_dir().join("starsimple-cli-test-checkpoint");
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    let cp = dir.join("k2.checkpoint");
    // First run with a tiny budget: stops early, leaves a checkpoint.
    let first = run(&[
        "search",
        "--k",
        "2",
        "--budget",
        "2",
        "--no-seed",
        "--checkpoint",
        cp.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(first.status.success());
    let v1: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(v1["exhaustive"], false);
    assert!(cp.exists());
    // Resume with a full budget.
    let second = run(&[
        "search",
        "--k",
        "2",
        "--budget",
        "1e6",
        "--no-seed",
        "--checkpoint",
        cp.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(second.status.success());
    let v2: serde_json::Value = serde_json::from_str(&stdout(&second)).unwrap();
    assert_eq!(v2["best"], 5);
}

#[test]
fn usage_errors_exit_with_two() {
    let out = run(&["construct", "--kind", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ted_fixtures_parse_and_render() {
    for name in ["doubling3.ted", "enhanced2.ted", "twist3.ted", "spiral.ted"] {
        let path = fixtures().join(name);
        let out = run(&["analyze", path.to_str().unwrap()]);
        assert!(out.status.success(), "{name}");
        let out = run(&["render", path.to_str().unwrap()]);
        assert!(out.status.success(), "{name}");
    }
}
