//! End-to-end runs of the command-line tool.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ncergo"))
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn ncergo")
}

fn table(sub: &str, cfg: &Path, out: &Path) -> Vec<Vec<f64>> {
    let status = run(&[sub, "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let text = fs::read_to_string(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("size,re_value,im_value,re_limit,im_limit,abs_error"));
    lines
        .map(|l| l.split(',').map(|x| x.parse::<f64>().unwrap()).collect())
        .collect()
}

#[test]
fn disjoint_table_converges_to_zero() {
    let dir = tempfile::tempdir().unwrap();
    let rows = table("disjoint", &config("pair_kappa_d.conf"), &dir.path().join("d.csv"));
    assert_eq!(rows.len(), 4);
    let sizes: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    assert_eq!(sizes, [1.0, 10.0, 100.0, 1000.0]);
    for row in &rows {
        assert_eq!((row[3], row[4]), (0.0, 0.0));
        let err = (row[1].hypot(row[2]) - row[5]).abs();
        assert!(err <= 1e-12);
    }
    assert!(rows[3][5] <= 1.0 / (std::f64::consts::PI * (3f64.sqrt() - 1.0) * 1000.0));
}

#[test]
fn group_table_is_identically_zero() {
    let dir = tempfile::tempdir().unwrap();
    let rows = table("group", &config("dual_cycles.conf"), &dir.path().join("g.csv"));
    assert_eq!(rows.len(), 3);
    for row in rows {
        assert_eq!(&row[1..], &[0.0; 5]);
    }
}

#[test]
fn mirror_and_average_tables() {
    let dir = tempfile::tempdir().unwrap();
    let rows = table("disjoint", &config("mirror_kappa_diag.conf"), &dir.path().join("m.csv"));
    assert!(rows.iter().all(|r| r[3] == 1.0 && r[4] == 0.0));
    assert!(rows.last().unwrap()[5] < 1e-3);
    let rows = table("average", &config("torus_gauge.conf"), &dir.path().join("a.csv"));
    for row in &rows {
        assert!((row[1].hypot(row[2]) - 0.0).is_finite());
        assert!(((row[1] - row[3]).hypot(row[2] - row[4]) - row[5]).abs() <= 1e-12);
    }
    assert!(rows.last().unwrap()[5] < rows[0][5]);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for (sub, cfg) in [("disjoint", "pair_kappa_d.conf"), ("average", "torus_gauge.conf"), ("group", "dual_cycles.conf")] {
        let a = dir.path().join("a.csv");
        let b = dir.path().join("b.csv");
        table(sub, &config(cfg), &a);
        table(sub, &config(cfg), &b);
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    }
    let first = run(&["verify", "--seed", "3"]);
    let second = run(&["verify", "--seed", "3"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn verify_passes_and_reports_each_invariant() {
    let out = run(&["verify"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() > 30);
    for line in text.lines() {
        let fields: Vec<&str> = line.split(' ').collect();
        assert_eq!(fields.len(), 4, "{line}");
        assert_eq!(fields[0], "PASS");
        fields[3].parse::<f64>().unwrap();
    }
    let out = run(&["verify", "--suite", "group", "--seed", "11"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().lines().all(|l| l.starts_with("PASS group ")));
}

#[test]
fn oracle_subcommand() {
    let out = run(&["oracle", "--theta", "1/2*sqrt(2)", "--truncation", "12", "--samples", "5", "--seed", "9"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("PASS oracle matrix_equivalence"));
    let out = run(&["oracle", "--theta", "sqrt(12)", "--samples", "1"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not square-free"));
}

#[test]
fn errors_exit_nonzero_with_location_or_constraint() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.conf");
    let out_path = dir.path().join("out.csv");
    let text = fs::read_to_string(config("pair_kappa_d.conf")).unwrap();

    fs::write(&bad, text.replace("sizes = 1, 10, 100, 1000", "sizes = 1, 10, 10")).unwrap();
    let out = run(&["disjoint", "--config", bad.to_str().unwrap(), "--out", out_path.to_str().unwrap()]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 15, column 16") && err.contains("strictly increasing"), "{err}");
    assert!(!out_path.exists());

    fs::write(&bad, text.replace("kappa_D", "omega_rel")).unwrap();
    let out = run(&["disjoint", "--config", bad.to_str().unwrap(), "--out", out_path.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("theta2 = -theta1"));
}
