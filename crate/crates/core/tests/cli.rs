// SPDX-License-Identifier: MIT OR Apache-2.0

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn cpwx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpwx")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const SMALL_CONFIG: &str = r#"schema_version = 1
[experiment]
replications = 1
master_seed = 3
[model]
n = 50
theta = 0.5
delta = 1.0
rho = 0.4
innovation = "normal"
"#;

#[test]
fn scan_wilcoxon_profile() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "x.csv", "value\n0\n0\n1\n1\n");
    let out = dir.path().join("p.csv");
    let o = cpwx(&["scan", "--input", &input, "--method", "wilcoxon", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&out).unwrap(), "k,statistic\n1,1.5\n2,2\n3,1.5\n");
}

#[test]
fn scan_cusum_constant_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "x.csv", "2.5\n2.5\n2.5\n");
    let out = dir.path().join("p.csv");
    let o = cpwx(&["scan", "--input", &input, "--method", "cusum", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&out).unwrap(), "k,statistic\n1,0\n2,0\n");
}

#[test]
fn scan_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.csv");
    let one = write(dir.path(), "one.csv", "value\n3\n");
    let o = cpwx(&["scan", "--input", &one, "--method", "cusum", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let junk = write(dir.path(), "junk.csv", "1\n2\nx\n");
    let o = cpwx(&["scan", "--input", &junk, "--method", "cusum", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    let o = cpwx(&["scan", "--input", "/nonexistent/x.csv", "--method", "cusum", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let o = cpwx(&["scan", "--input", &junk, "--method", "median", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn estimate_lines() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "x.csv", "0\n0\n1\n1\n");
    for m in ["wilcoxon", "cusum"] {
        let o = cpwx(&["estimate", "--input", &input, "--method", m]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), "k_hat=2 theta_hat=0.5\n");
    }
}

#[test]
fn estimate_constant_input_warns() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "x.csv", "1\n1\n1\n");
    let o = cpwx(&["estimate", "--input", &input, "--method", "wilcoxon"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("k_hat=1 "));
    assert!(String::from_utf8_lossy(&o.stderr).contains("degenerate"));
    let o = cpwx(&["estimate", "--input", &input, "--method", "cusum"]);
    assert_eq!(stdout(&o), "k_hat=1 theta_hat=0.3333333333333333\n");
}

#[test]
fn simulate_single_replication_has_two_outcome_rows() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "c.toml", SMALL_CONFIG);
    let out = dir.path().join("out");
    let o = cpwx(&["simulate", "--config", &config, "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let outcomes = fs::read_to_string(out.join("outcomes.csv")).unwrap();
    let lines: Vec<&str> = outcomes.lines().collect();
    assert_eq!(lines[0], "rep_index,method,k_hat,theta_hat");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("0,wilcoxon,"));
    assert!(lines[2].starts_with("0,cusum,"));
    let summary = fs::read_to_string(out.join("summary.csv")).unwrap();
    assert!(summary.starts_with("method,n,theta,delta,rho,innovation,outliers,R,mean,sd\n"));
    assert!(summary.contains("wilcoxon,50,0.5,1,0.4,normal,none,1,"));
    let histogram = fs::read_to_string(out.join("histogram.csv")).unwrap();
    assert_eq!(histogram.lines().count(), 1 + 2 * 50);
}

#[test]
fn simulate_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "c.toml", &SMALL_CONFIG.replace("replications = 1", "replications = 50"));
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    assert!(cpwx(&["simulate", "--config", &config, "--out", a.to_str().unwrap()]).status.success());
    let o = Command::new(env!("CARGO_BIN_EXE_cpwx"))
        .args(["simulate", "--config", &config, "--out", b.to_str().unwrap()])
        .env("CPWX_WORKERS", "3")
        .output()
        .unwrap();
    assert!(o.status.success());
    for f in ["summary.csv", "histogram.csv", "outcomes.csv"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn simulate_error_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let unknown = write(dir.path(), "u.toml", &SMALL_CONFIG.replace("rho = 0.4", "rho = 0.4\nphi = 1"));
    let o = cpwx(&["simulate", "--config", &unknown, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = cpwx(&["simulate", "--config", "/nonexistent.toml", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let good = write(dir.path(), "g.toml", SMALL_CONFIG);
    let blocker = write(dir.path(), "file", "");
    let o = cpwx(&["simulate", "--config", &good, "--out", &format!("{blocker}/sub")]);
    assert_eq!(o.status.code(), Some(3));
    let o = cpwx(&["simulate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn theory_theta_delta() {
    let o = cpwx(&["theory", "theta-delta", "--dist", "normal", "--delta", "0.01"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let v: f64 = text.lines().next().unwrap().strip_prefix("theta_delta=").unwrap().parse().unwrap();
    assert!((v - 2.8209e-3).abs() < 0.01 * 2.8209e-3, "{v}");
    let o = cpwx(&["theory", "theta-delta", "--dist", "normal", "--delta", "-1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn theory_ned_constants() {
    let o = cpwx(&["theory", "ned-constants", "--rho", "0.4", "--k-max", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<(usize, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let (k, a) = l.split_once(',').unwrap();
            (k.parse().unwrap(), a.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 6);
    for (k, a) in rows {
        let closed = 2.0 * (2.0 / std::f64::consts::PI).sqrt() * 0.4f64.powi(k as i32 + 1) / 0.6;
        assert!((a - closed).abs() < 1e-14, "k={k}");
    }
    assert_eq!(cpwx(&["theory", "ned-constants", "--k-max", "5"]).status.code(), Some(2));
}

#[test]
fn theory_summability() {
    let o = cpwx(&["theory", "summability", "--rho", "0.4", "--beta-ratio", "0.4", "--k-max", "30"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("converges=true\n"));

    let dir = tempfile::tempdir().unwrap();
    let a: String = (0..=100).map(|k| format!("{}\n", if k == 0 { 1.0 } else { 1.0 / (k * k) as f64 })).collect();
    let a_path = write(dir.path(), "a.csv", &a);
    let o = cpwx(&["theory", "summability", "--a-file", &a_path, "--k-max", "100"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("converges=false\n"), "{}", stdout(&o));
}

#[test]
fn theory_decompose() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "y.csv", "value\n0.3\n-1.2\n0.7\n0.7\n2.0\n-0.4\n");
    let o = cpwx(&["theory", "decompose", "--input", &input, "--k-star", "3", "--delta", "0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "k,w2,u2,u_shift,identity");
    assert_eq!(rows.len(), 6);
    for r in &rows[1..] {
        let cols: Vec<&str> = r.split(',').collect();
        assert_eq!(cols[1], cols[2]);
        assert_eq!(cols[3], "0");
        assert_eq!(cols[4], "true");
    }
    let o = cpwx(&["theory", "decompose", "--input", &input, "--k-star", "9", "--delta", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    let o = cpwx(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("simulate"));
}
