use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn revb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revb")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

/// Header-stripped CSV rows as parsed floats (text columns become NaN).
fn rows(text: &[u8]) -> (Vec<String>, Vec<Vec<f64>>) {
    let body: String = String::from_utf8(text.to_vec())
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    let header = reader.headers().unwrap().iter().map(str::to_string).collect();
    let data = reader.records().map(|r| r.unwrap().iter().map(|c| c.parse().unwrap_or(f64::NAN)).collect()).collect();
    (header, data)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

#[test]
fn state_rows_and_density() {
    let out = revb(&["state", "--n", "2", "--grid", "32", "--angular", "4", "--kz", "-1.5"]);
    assert_eq!(code(&out), 0);
    let (header, data) = rows(&out.stdout);
    assert_eq!(data.len(), 32 * 4);
    let r = column(&header, "r");
    let density = column(&header, "density");
    for row in &data {
        assert!(row[r] > 0.0);
        let psi_sq: f64 = (3..11).map(|c| row[c] * row[c]).sum();
        assert!((psi_sq - row[density]).abs() <= 1e-15 * row[density].max(1e-300));
    }
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# units: natural units"));
    assert!(text.contains("# config.kz: -1.5"));
}

#[test]
fn observables_table() {
    let out = revb(&["observables"]);
    assert_eq!(code(&out), 0);
    let (header, data) = rows(&out.stdout);
    assert_eq!(data.len(), 11);
    let (n, d, lz, sz) =
        (column(&header, "n"), column(&header, "delta_n"), column(&header, "Lz"), column(&header, "Sz"));
    for pair in data.windows(2) {
        assert!(pair[1][d] < pair[0][d]);
    }
    for row in &data {
        assert!((row[lz] + row[sz] - (row[n] + 0.5)).abs() < 1e-10);
    }
    assert!((data[1][d] - 0.235672523161).abs() < 1e-8);
}

#[test]
fn thread_count_does_not_change_output() {
    let one = revb(&["observables", "--n-range", "-3..4", "--threads", "1"]);
    let four = revb(&["observables", "--n-range", "-3..4", "--threads", "4"]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn verify_exit_codes() {
    let ok = revb(&["verify", "--n", "-2", "--kappa", "2.5", "--branch", "-"]);
    assert_eq!(code(&ok), 0, "{}", String::from_utf8_lossy(&ok.stderr));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    let checks = v["records"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["check"] == "k-operator" && c["passed"] == true));
    assert!(checks.iter().filter(|c| c["asserted"] == true).all(|c| c["passed"] == true));

    let bad = revb(&["verify", "--eigenvalue-offset", "1e-3"]);
    assert_eq!(code(&bad), 1);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("hamiltonian"));
}

#[test]
fn series_check_columns() {
    let out = revb(&["series-check"]);
    assert_eq!(code(&out), 0);
    let (header, data) = rows(&out.stdout);
    assert_eq!(data.len(), 6);
    let ident = column(&header, "identification_max_error");
    let resub = column(&header, "resubstitution_residual");
    let parity = column(&header, "parity_violations");
    for row in &data {
        assert!(row[ident] < 1e-10 && row[resub] < 1e-13 && row[parity] == 0.0);
    }
}

#[test]
fn zeros_are_increasing_and_reproducible() {
    let first = revb(&["zeros", "--n-range", "0..12"]);
    let second = revb(&["zeros", "--n-range", "0..12"]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let (header, data) = rows(&first.stdout);
    let z = column(&header, "first_zero");
    assert!((data[0][z] - 2.404825557695773).abs() < 1e-10);
    for pair in data.windows(2) {
        assert!(pair[1][z] > pair[0][z]);
    }
}

#[test]
fn input_and_io_failures() {
    assert_eq!(code(&revb(&["observables", "--kappa", "-1"])), 2);
    assert_eq!(code(&revb(&["verify", "--n-range", "0..2"])), 2);
    assert_eq!(code(&revb(&["zeros", "--cutoff", "nowhere"])), 2);
    assert_eq!(code(&revb(&["state", "--grid", "4"])), 2);
    assert_eq!(code(&revb(&["zeros", "--out", "/nonexistent/dir/zeros.csv"])), 3);
    assert_eq!(code(&revb(&["zeros", "--config", "/nonexistent/run.cfg"])), 3);
}

#[test]
fn config_file_then_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# run\nn-range = 2..3\nkappa = 3.0\nformat = json\n").unwrap();
    let out_path = dir.path().join("obs.json");
    let cfg_arg = cfg.to_str().unwrap();
    let out = revb(&["observables", "--config", cfg_arg, "--kappa", "0.5", "--out", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(Path::new(&out_path)).unwrap()).unwrap();
    assert_eq!(v["meta"]["config"]["kappa"], "0.5");
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 2);
    assert_eq!(records[0]["n"], 2);
    assert_eq!(records[0]["kappa"], 0.5);

    let single = revb(&["observables", "--config", cfg_arg, "--n", "4", "--format", "csv"]);
    let (_, data) = rows(&single.stdout);
    assert_eq!(data.len(), 1);
    assert_eq!(data[0][0], 4.0);
}
