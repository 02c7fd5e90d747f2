use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(rel)
}

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hopf-critical"));
    cmd.env_remove("HOPF_CRITICAL_THREADS");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    (out.status.code().unwrap(), v)
}

#[test]
fn exit_code_matrix() {
    let graphs = data("graphs");
    let g = |name: &str| graphs.join(name).to_string_lossy().into_owned();
    let cases: Vec<(Vec<String>, i32)> = vec![
        (vec!["verify-hopf", "--n", "2", "--samples", "2000", "--seed", "7"], 0),
        (vec!["verify-hopf", "--n", "16"], 2),
        (vec!["verify-hopf", "--n", "8", "--samples", "0"], 0),
        (vec!["verify-hopf", "--n", "2", "--samples", "10", "--sv-tol", "0"], 1),
        (vec!["critical-points", "--n", "2"], 0),
        (vec!["critical-points", "--n", "2", "--floor", "1"], 1),
        (vec!["critical-points", "--n", "2", "--refine-tol", "0.1"], 2),
        (vec!["fiber", "--n", "4", "--samples", "5"], 0),
        (vec!["fiber", "--n", "2", "--target", "0,0,-1"], 2),
        (vec!["phi", "--e", "2", "--c", "0", "--n", "4"], 0),
        (vec!["phi", "--e", "1", "--c", "2", "--n", "8"], 0),
        (vec!["phi", "--e", "-1", "--c", "0", "--n", "2"], 2),
        (vec!["lower-bound", "--manifold", "S2xS2", "--n", "2"], 0),
        (vec!["lower-bound", "--manifold", "S3xS5", "--n", "4"], 1),
        (vec!["lower-bound", "--manifold", "S2 # S3", "--n", "2"], 2),
        (vec!["enumerate-graphs", "--max-edges", "4"], 0),
        (vec!["enumerate-graphs", "--max-edges", "9"], 2),
        (vec!["unknown-command"], 2),
    ]
    .into_iter()
    .map(|(a, c)| (a.into_iter().map(String::from).collect(), c))
    .chain([
        (
            vec![
                "graph-sum".into(),
                "--graph".into(),
                g("theta.json"),
                "--n".into(),
                "2".into(),
            ],
            0,
        ),
        (
            vec![
                "graph-sum".into(),
                "--graph".into(),
                g("loop.json"),
                "--n".into(),
                "4".into(),
            ],
            0,
        ),
        (
            vec![
                "graph-sum".into(),
                "--graph".into(),
                g("disconnected.json"),
                "--n".into(),
                "2".into(),
            ],
            2,
        ),
        (
            vec![
                "graph-sum".into(),
                "--graph".into(),
                g("out_of_range.json"),
                "--n".into(),
                "2".into(),
            ],
            2,
        ),
        (
            vec![
                "graph-sum".into(),
                "--graph".into(),
                g("unknown_field.json"),
                "--n".into(),
                "2".into(),
            ],
            2,
        ),
        (
            vec![
                "graph-sum".into(),
                "--graph".into(),
                g("truncated.json"),
                "--n".into(),
                "2".into(),
            ],
            2,
        ),
        (
            vec![
                "graph-sum".into(),
                "--graph".into(),
                g("missing.json"),
                "--n".into(),
                "2".into(),
            ],
            2,
        ),
    ])
    .collect();
    for (args, want) in cases {
        let out = bin().args(&args).output().unwrap();
        assert_eq!(
            out.status.code(),
            Some(want),
            "{args:?}\n{}",
            String::from_utf8_lossy(&out.stderr)
        );
        if want == 2 {
            assert!(!out.stderr.is_empty(), "{args:?} printed no diagnostic");
        }
    }
}

#[test]
fn report_schema() {
    let (code, v) = json(&["phi", "--e", "3", "--c", "2", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "hopf-critical/report");
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "phi");
    assert_eq!(v["verdict"], "pass");
    assert!(v["wall_time_seconds"].is_null());
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
    assert_eq!(v["config"]["e"], 3);
}

#[test]
fn timing_flag_records_wall_time() {
    let (_, v) = json(&["phi", "--e", "0", "--c", "0", "--n", "2", "--timing"]);
    assert!(v["wall_time_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn verdict_is_conjunction_of_checks() {
    let (code, v) = json(&["critical-points", "--n", "2", "--floor", "1"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "fail");
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["status"] == "fail"));
    assert!(checks
        .iter()
        .any(|c| c["name"] == "grid_floor" && c["status"] == "fail"));
}

#[test]
fn critical_points_at_poles() {
    for n in ["2", "8"] {
        let (code, v) = json(&["critical-points", "--n", n]);
        assert_eq!(code, 0, "n={n}");
        let pts = v["data"]["critical_points"].as_array().unwrap();
        assert_eq!(pts.len(), 2);
        let heights: Vec<f64> = pts.iter().map(|p| p["height"].as_f64().unwrap()).collect();
        assert!(
            (heights[0] + 1.0).abs() < 1e-9 && (heights[1] - 1.0).abs() < 1e-9,
            "{heights:?}"
        );
    }
}

#[test]
fn coarse_grid_warns_and_still_refines() {
    let (_, v) = json(&["critical-points", "--n", "2", "--grid", "2"]);
    assert!(!v["warnings"].as_array().unwrap().is_empty());
    assert!(!v["data"]["candidates"].as_array().unwrap().is_empty());
}

#[test]
fn vacuous_sweep_warns() {
    let (code, v) = json(&["verify-hopf", "--n", "8", "--samples", "0"]);
    assert_eq!(code, 0);
    assert!(!v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn parse_diagnostic_carries_column() {
    let out = run(&["lower-bound", "--manifold", "S2 # S3", "--n", "2"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("column 6"), "{err}");
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "phi",
        "--e",
        "2",
        "--c",
        "0",
        "--n",
        "4",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["data"]["value"], 6);
    assert_eq!(v["data"]["kind"], "exact");
}

fn golden(name: &str, args: &[&str], dir: &Path) {
    let out = bin()
        .args(args)
        .args(["--format", "json"])
        .current_dir(dir)
        .output()
        .unwrap();
    let want = std::fs::read_to_string(data("golden").join(name)).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), want, "{name} drifted");
}

#[test]
fn golden_reports() {
    let here = data(".");
    golden("phi_e2_c0_n4.json", &["phi", "--e", "2", "--c", "0", "--n", "4"], &here);
    golden(
        "lower_bound_s2xs2_n2.json",
        &["lower-bound", "--manifold", "S2xS2", "--n", "2"],
        &here,
    );
    golden(
        "graph_sum_theta_n2.json",
        &["graph-sum", "--graph", "theta.json", "--n", "2"],
        &data("graphs"),
    );
}

#[test]
fn reports_are_byte_identical_across_runs_and_threads() {
    for args in [
        &[
            "verify-hopf",
            "--n",
            "4",
            "--samples",
            "3000",
            "--seed",
            "11",
            "--format",
            "json",
        ][..],
        &[
            "critical-points",
            "--n",
            "4",
            "--samples",
            "5000",
            "--seed",
            "3",
            "--format",
            "json",
        ][..],
        &[
            "fiber",
            "--n",
            "8",
            "--samples",
            "10",
            "--seed",
            "5",
            "--format",
            "json",
        ][..],
    ] {
        let a = run(args).stdout;
        let b = run(args).stdout;
        let c = bin()
            .args(args)
            .env("HOPF_CRITICAL_THREADS", "2")
            .output()
            .unwrap()
            .stdout;
        assert!(!a.is_empty());
        assert_eq!(a, b, "{args:?}");
        assert_eq!(a, c, "{args:?} depends on thread count");
    }
}

#[test]
fn bad_thread_env_is_usage_error() {
    let out = bin()
        .args(["phi", "--e", "0", "--c", "0", "--n", "2"])
        .env("HOPF_CRITICAL_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn text_output_ends_with_verdict() {
    let out = run(&["lower-bound", "--manifold", "S2xS2", "--n", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.trim_end().ends_with("verdict: PASS"), "{text}");
}
