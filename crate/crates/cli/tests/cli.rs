use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use fracdyn::geometry::{box_dimension, default_ladder};
use serde_json::Value;

fn fracdyn(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracdyn"))
        .args(args)
        .current_dir(dir)
        .env_remove("FRACDYN_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn parse_csv(text: &str) -> Vec<Vec<f64>> {
    text.lines().skip(1).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect()
}

#[test]
fn simulate_writes_one_row_per_step() {
    let dir = tempfile::tempdir().unwrap();
    let o = fracdyn(
        dir.path(),
        &["simulate", "--system", "lorenz", "--alpha", "0.95", "--h", "0.005", "--t-end", "100", "--out", "traj.csv"],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(dir.path().join("traj.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,x1,x2,x3"));
    assert_eq!(lines.count(), 20001);
    assert!(stdout(&o).contains("20001 rows"));
}

#[test]
fn exit_codes_separate_usage_from_domain_errors() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| fracdyn(dir.path(), args).status.code();
    assert_eq!(code(&["simulate", "--system", "nope", "--out", "x.csv"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["simulate", "--system", "lorenz", "--h", "-1", "--out", "x.csv"]), Some(2));
    assert_eq!(code(&["simulate", "--system", "lorenz", "--alpha", "1.5", "--out", "x.csv"]), Some(1));
    assert_eq!(code(&["mlf", "--alpha", "0", "--z", "1"]), Some(1));
    assert!(!dir.path().join("x.csv").exists());

    let o = Command::new(env!("CARGO_BIN_EXE_fracdyn"))
        .args(["list-systems"])
        .env("FRACDYN_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("FRACDYN_THREADS"));
}

#[test]
fn list_systems_names_the_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&fracdyn(dir.path(), &["list-systems"]));
    let names: Vec<&str> = out.lines().map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(names, ["lorenz", "duffing", "chen", "rossler", "chua"]);
    assert!(out.contains("a=0.2 b=0.2 c=5.7"));
}

#[test]
fn mlf_prints_e_for_the_exponential_case() {
    let dir = tempfile::tempdir().unwrap();
    let o = fracdyn(dir.path(), &["mlf", "--alpha", "1", "--z", "1"]);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - std::f64::consts::E).abs() < 1e-12);
    let o = fracdyn(dir.path(), &["mlf", "--alpha", "1", "--beta", "2", "--z", "1"]);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - (std::f64::consts::E - 1.0)).abs() < 1e-12);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<(Vec<u8>, Vec<u8>)> = ["a", "b"]
        .iter()
        .map(|tag| {
            let csv = format!("{tag}.csv");
            let json = format!("{tag}.json");
            let common = ["--system", "chen", "--h", "0.005", "--t-end", "20"];
            let mut sim = vec!["simulate"];
            sim.extend(common);
            sim.extend(["--out", &csv]);
            assert!(fracdyn(dir.path(), &sim).status.success());
            let mut lyap = vec!["lyapunov"];
            lyap.extend(common);
            lyap.extend(["--out", &json]);
            assert!(fracdyn(dir.path(), &lyap).status.success());
            (fs::read(dir.path().join(&csv)).unwrap(), fs::read(dir.path().join(&json)).unwrap())
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn simulate_dimension_round_trip_is_lossless() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["--system", "lorenz", "--alpha", "0.995", "--h", "0.01", "--t-end", "60"];
    let mut csv_args = vec!["simulate"];
    csv_args.extend(base);
    csv_args.extend(["--out", "t.csv"]);
    assert!(fracdyn(dir.path(), &csv_args).status.success());
    let mut json_args = vec!["simulate"];
    json_args.extend(base);
    json_args.extend(["--format", "json", "--out", "t.json"]);
    assert!(fracdyn(dir.path(), &json_args).status.success());

    let csv_rows = parse_csv(&fs::read_to_string(dir.path().join("t.csv")).unwrap());
    let doc: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("t.json")).unwrap()).unwrap();
    let json_rows: Vec<Vec<f64>> = serde_json::from_value(doc["rows"].clone()).unwrap();
    assert_eq!(csv_rows.len(), json_rows.len());
    for (a, b) in csv_rows.iter().zip(&json_rows) {
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= 1e-12 * y.abs().max(1e-300), "{x} vs {y}");
        }
    }

    let o = fracdyn(dir.path(), &["dimension", "--input", "t.csv", "--columns", "2,3,4", "--transient", "0.2", "--out", "d.json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("d.json")).unwrap()).unwrap();
    let skip = (0.2 * json_rows.len() as f64).floor() as usize;
    let points: Vec<Vec<f64>> = json_rows[skip..].iter().map(|r| r[1..4].to_vec()).collect();
    let (hi, lo, n) = default_ladder(&points).unwrap();
    let direct = box_dimension(&points, hi, lo, n).unwrap();
    assert_eq!(report["points"].as_u64().unwrap() as usize, points.len());
    let counts: Vec<usize> = serde_json::from_value(report["counts"].clone()).unwrap();
    assert_eq!(counts, direct.counts);
    assert_eq!(report["slope"].as_f64().unwrap(), direct.slope);
    assert_eq!(report["schema_version"], 1);
}

#[test]
fn flags_override_config_which_overrides_defaults() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("run.toml"),
        "system = \"lorenz\"\nalpha = 0.9\nx0 = [2.0, 1.0, 1.0]\n\n[params]\nrho = 20.0\n\n[solver]\nh = 0.01\nt_end = 1.0\n",
    )
    .unwrap();
    let o = fracdyn(dir.path(), &["simulate", "--config", "run.toml", "--out", "a.csv"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("alpha=0.9") && out.contains("h=0.01") && out.contains("101 rows"), "{out}");
    let rows = parse_csv(&fs::read_to_string(dir.path().join("a.csv")).unwrap());
    assert_eq!(rows[0], [0.0, 2.0, 1.0, 1.0]);

    let o = fracdyn(dir.path(), &["simulate", "--config", "run.toml", "--h", "0.02", "--alpha", "0.8", "--out", "b.csv"]);
    let out = stdout(&o);
    assert!(out.contains("alpha=0.8") && out.contains("h=0.02") && out.contains("51 rows"), "{out}");

    fs::write(dir.path().join("bad.toml"), "sytem = \"lorenz\"\n").unwrap();
    let o = fracdyn(dir.path(), &["simulate", "--config", "bad.toml", "--out", "c.csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failed_runs_leave_existing_output_untouched() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("keep.csv");
    fs::write(&target, "previous\n").unwrap();
    let o = fracdyn(dir.path(), &["simulate", "--system", "chua", "--t-end", "300", "--out", "keep.csv"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(fs::read_to_string(&target).unwrap(), "previous\n");
    let leftovers: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(leftovers.len(), 1, "{leftovers:?}");
}

#[test]
fn stability_report_lists_the_lorenz_equilibria() {
    let dir = tempfile::tempdir().unwrap();
    let o = fracdyn(dir.path(), &["stability", "--system", "lorenz", "--out", "s.json"]);
    assert!(o.status.success());
    let doc: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("s.json")).unwrap()).unwrap();
    let eq = doc["equilibria"].as_array().unwrap();
    assert_eq!(eq.len(), 3);
    for e in eq {
        assert_eq!(e["stability"], "unstable");
    }
}

#[test]
fn reproduce_writes_a_full_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let o = fracdyn(dir.path(), &["reproduce", "1", "--out-dir", "bundle", "--t-end", "60"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for name in [
        "trajectory.csv",
        "lyapunov.json",
        "dimension.json",
        "dimension_plot.txt",
        "stability.json",
        "comparison.md",
        "comparison.json",
        "settings.json",
    ] {
        assert!(dir.path().join("bundle").join(name).exists(), "{name}");
    }
    let claims: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("bundle/comparison.json")).unwrap()).unwrap();
    assert!(claims.as_array().unwrap().iter().all(|c| c["verdict"].is_string()));
}
