use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn dtvol(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dtvol"))
        .args(args)
        .env("DTVOL_CACHE_DIR", cache)
        .output()
        .expect("dtvol runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "dtvol failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

#[test]
fn riley_coefficients_of_small_knots() {
    let cache = tempfile::tempdir().unwrap();
    let fig8 = dtvol(
        cache.path(),
        &["riley", "-k", "2", "-n", "-1", "--M", "1,0", "--zpoly"],
    );
    assert_eq!(
        json(&fig8),
        serde_json::json!([[3.0, 0.0], [-3.0, 0.0], [1.0, 0.0]])
    );
    let trefoil = dtvol(
        cache.path(),
        &["riley", "-k", "2", "-n", "1", "--M", "1,0", "--zpoly"],
    );
    assert_eq!(json(&trefoil), serde_json::json!([[3.0, 0.0], [-1.0, 0.0]]));
}

#[test]
fn riley_values_vanish_at_roots() {
    let cache = tempfile::tempdir().unwrap();
    let out = dtvol(
        cache.path(),
        &[
            "roots",
            "-k",
            "2",
            "-n",
            "-1",
            "--omega",
            "0",
            "--admissible",
        ],
    );
    let roots = json(&out);
    let z = &roots.as_array().unwrap()[0];
    let zs = format!("{},{}", z[0], z[1]);
    let out = dtvol(
        cache.path(),
        &["riley", "-k", "2", "-n", "-1", "--M", "1,0", "--z", &zs],
    );
    let v = json(&out);
    assert!(v[0][0].as_f64().unwrap().hypot(v[0][1].as_f64().unwrap()) < 1e-12);
}

#[test]
fn invalid_parameters_exit_with_usage_code() {
    let cache = tempfile::tempdir().unwrap();
    let out = dtvol(cache.path(), &["volume", "-k", "2", "-n", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = dtvol(cache.path(), &["volume", "-k", "1", "-n", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn trefoil_is_reported_non_hyperbolic() {
    let cache = tempfile::tempdir().unwrap();
    let out = dtvol(cache.path(), &["volume", "-k", "2", "-n", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not hyperbolic"));
}

#[test]
fn figure_eight_volume() {
    let cache = tempfile::tempdir().unwrap();
    let v = json(&dtvol(cache.path(), &["volume", "-k", "2", "-n", "-1"]));
    assert!((v["volume"].as_f64().unwrap() - 2.029883212819307).abs() < 1e-8);
    assert!((v["alpha_K"].as_f64().unwrap() - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-6);
}

#[test]
fn alpha_k_command() {
    let cache = tempfile::tempdir().unwrap();
    let v = json(&dtvol(cache.path(), &["alpha-k", "-k", "3", "-n", "1"]));
    assert!((v["alpha_K"].as_f64().unwrap() - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-6);
}

fn csv_rows(path: &Path) -> Vec<Vec<f64>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    r.records()
        .map(|rec| rec.unwrap().iter().map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn volume_curve_and_branch_files() {
    let cache = tempfile::tempdir().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let curve = dir.path().join("fig8.csv");
    let out = dtvol(
        cache.path(),
        &[
            "volume",
            "-k",
            "2",
            "-n",
            "-1",
            "--curve",
            curve.to_str().unwrap(),
        ],
    );
    let first = json(&out);
    assert!((first["volume"].as_f64().unwrap() - 2.029883212819307).abs() < 1e-8);

    let rows = csv_rows(&curve);
    assert_eq!(rows.len(), 50);
    assert_eq!(rows[0][0], 0.0);
    assert!((rows[49][0] - std::f64::consts::PI).abs() < 1e-14);
    assert!(rows.windows(2).all(|w| w[1][1] <= w[0][1] + 1e-12));
    assert!(rows[49][1].abs() < 1e-9);

    let branch = csv_rows(&dir.path().join("fig8.branch.csv"));
    assert!(branch.len() > 10);
    assert!(branch.iter().all(|row| row.len() == 6));
    assert!(branch.windows(2).all(|w| w[0][0] < w[1][0]));
}

#[test]
fn curve_to_stdout() {
    let cache = tempfile::tempdir().unwrap();
    let text = stdout(&dtvol(
        cache.path(),
        &[
            "curve",
            "-k",
            "4",
            "-n",
            "1",
            "--from",
            "0.5",
            "--to",
            "1.5",
            "--samples",
            "3",
        ],
    ));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "alpha,volume,quad_error");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("0.5,"));
    assert!(lines[3].starts_with("1.5,"));
}

#[test]
fn cache_hit_is_byte_identical() {
    let cache = tempfile::tempdir().unwrap();
    let args = ["volume", "-k", "3", "-n", "-2", "--alpha", "0.7"];
    let first = dtvol(cache.path(), &args);
    let entries = std::fs::read_dir(cache.path()).unwrap().count();
    assert_eq!(entries, 1);
    let second = dtvol(cache.path(), &args);
    assert_eq!(stdout(&first), stdout(&second));
    let fresh = dtvol(
        cache.path(),
        &[
            "--no-cache",
            "volume",
            "-k",
            "3",
            "-n",
            "-2",
            "--alpha",
            "0.7",
        ],
    );
    assert_eq!(stdout(&first), stdout(&fresh));
    assert_eq!(std::fs::read_dir(cache.path()).unwrap().count(), 1);
}

#[test]
fn cached_curve_files_are_rewritten() {
    let cache = tempfile::tempdir().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let curve = dir.path().join("v.csv");
    let args = [
        "volume",
        "-k",
        "2",
        "-n",
        "2",
        "--samples",
        "5",
        "--curve",
        curve.to_str().unwrap(),
    ];
    dtvol(cache.path(), &args);
    let before = std::fs::read(&curve).unwrap();
    std::fs::remove_file(&curve).unwrap();
    stdout(&dtvol(cache.path(), &args));
    assert_eq!(std::fs::read(&curve).unwrap(), before);
}

#[test]
fn quick_check_passes() {
    let cache = tempfile::tempdir().unwrap();
    let text = stdout(&dtvol(cache.path(), &["check", "--quick"]));
    assert!(text.contains("5 of 5 suites passed"));
    assert!(!text.contains("FAIL"));
}
