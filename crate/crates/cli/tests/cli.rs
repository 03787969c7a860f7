//! End-to-end tests that drive the compiled `isewsim` binary the way a
//! user would: against the calibration bundle and scenario files shipped
//! under `data/`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join("data")
        .join(sub)
}

fn isewsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isewsim"))
        .args(args)
        .output()
        .expect("spawn isewsim")
}

fn path_str(p: &Path) -> String {
    p.to_str().expect("utf-8 path").to_string()
}

#[test]
fn run_writes_all_tables_and_is_deterministic() {
    let calib = path_str(&data("calibration"));
    let scenario = path_str(&data("scenarios").join("bau.json"));
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();

    for dir in [dir_a.path(), dir_b.path()] {
        let out = isewsim(&[
            "run",
            "--calibration",
            &calib,
            "--scenario",
            &scenario,
            "--out",
            &path_str(dir),
        ]);
        assert!(
            out.status.success(),
            "run failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }

    for name in [
        "bau_timeseries.csv",
        "bau_timeseries_indexed.csv",
        "bau_doughnut.csv",
        "bau_isew_components.csv",
        "bau.traj",
    ] {
        let a = fs::read(dir_a.path().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        let b = fs::read(dir_b.path().join(name)).unwrap();
        assert!(!a.is_empty(), "{name} is empty");
        assert_eq!(a, b, "{name} differs between two identical runs");
    }
}

#[test]
fn years_override_shortens_the_horizon() {
    let dir = tempfile::tempdir().unwrap();
    let out = isewsim(&[
        "run",
        "--calibration",
        &path_str(&data("calibration")),
        "--scenario",
        &path_str(&data("scenarios").join("bau.json")),
        "--years",
        "2020:2040",
        "--out",
        &path_str(dir.path()),
    ]);
    assert!(
        out.status.success(),
        "run failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let traj = isewsim::report::load_trajectory(&dir.path().join("bau.traj"))
        .expect("load written trajectory");
    assert_eq!(traj.start_year, 2020);
    assert_eq!(traj.end_year, 2040);
    assert_eq!(traj.years.len(), 21);
}

#[test]
fn json_format_emits_parseable_json_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = isewsim(&[
        "run",
        "--calibration",
        &path_str(&data("calibration")),
        "--scenario",
        &path_str(&data("scenarios").join("bau.json")),
        "--format",
        "json",
        "--years",
        "2020:2040",
        "--out",
        &path_str(dir.path()),
    ]);
    assert!(out.status.success());
    let raw = fs::read_to_string(dir.path().join("bau_timeseries.json")).unwrap();
    let rows: serde_json::Value = serde_json::from_str(&raw).expect("valid json");
    let rows = rows.as_array().expect("array of rows");
    assert!(!rows.is_empty());
    assert_eq!(rows[0]["scenario"], "bau");
}

#[test]
fn compare_ranks_scenarios_against_the_first_trajectory() {
    let calib = path_str(&data("calibration"));
    let dir = tempfile::tempdir().unwrap();
    let out_dir = path_str(dir.path());
    let out = isewsim(&[
        "run",
        "--calibration",
        &calib,
        "--scenario",
        &path_str(&data("scenarios").join("bau.json")),
        "--scenario",
        &path_str(&data("scenarios").join("all_three.json")),
        "--years",
        "2020:2040",
        "--out",
        &out_dir,
    ]);
    assert!(out.status.success());

    let bau = path_str(&dir.path().join("bau.traj"));
    let all3 = path_str(&dir.path().join("all_three.traj"));
    let out = isewsim(&["compare", &bau, &all3, "--out", &out_dir]);
    assert!(
        out.status.success(),
        "compare failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let comparison = fs::read_to_string(dir.path().join("comparison.csv")).unwrap();
    let ranking = fs::read_to_string(dir.path().join("ranking.csv")).unwrap();
    assert!(comparison.lines().count() > 1);
    assert!(ranking.lines().count() > 1);
    // Every delta on the baseline scenario's own rows must be zero.
    for line in comparison.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        if fields[2] == "bau" {
            assert_eq!(fields[5], "0.0", "baseline delta must be zero: {line}");
        }
    }
}

#[test]
fn compare_requires_at_least_two_trajectories() {
    let out = isewsim(&["compare", "only_one.traj"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_reports_the_bundle_and_scenarios() {
    let out = isewsim(&[
        "validate",
        "--calibration",
        &path_str(&data("calibration")),
        "--scenario",
        &path_str(&data("scenarios").join("redistribution.json")),
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("fingerprint"));
    assert!(stdout.contains("scenario 'redistribution'"));
    assert!(stdout.contains("levers redistribution"));
}

#[test]
fn missing_calibration_directory_exits_with_input_error() {
    let out = isewsim(&["validate", "--calibration", "/definitely/not/here"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
}

#[test]
fn malformed_scenario_file_exits_with_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("broken.json");
    fs::write(&bad, "{\"name\": \"broken\", \"unknown_field\": 1}").unwrap();
    let out = isewsim(&[
        "run",
        "--calibration",
        &path_str(&data("calibration")),
        "--scenario",
        &path_str(&bad),
        "--out",
        &path_str(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_years_flag_is_rejected_before_running() {
    let out = isewsim(&[
        "run",
        "--calibration",
        &path_str(&data("calibration")),
        "--scenario",
        &path_str(&data("scenarios").join("bau.json")),
        "--years",
        "2020-2040",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("START:END"));
}
