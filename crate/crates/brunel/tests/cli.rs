use std::fs;
use std::process::{Command, Output};

use brunel::formats::read_table_csv;
use brunel_core::arith::Rational;
use brunel_core::coeffs::{alpha, beta};
use serde_json::Value;

fn brunel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brunel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn coeff_examples() {
    for (kind, n, p, want) in [("alpha", "1", "1", "1/8"), ("alpha", "5", "0", "1/32"), ("beta", "3", "2", "0")] {
        let out = brunel(&["coeff", "--kind", kind, "--n", n, "--p", p]);
        assert!(out.status.success());
        assert_eq!(stdout(&out).trim(), want);
    }
    let out = brunel(&["--format", "json", "coeff", "--n", "1", "--p", "1"]);
    let v = json(&out);
    assert_eq!(v["value"], "0.125");
    assert_eq!(v["approx"], 0.125);
}

#[test]
fn coeff_usage_error() {
    let out = brunel(&["coeff", "--n", "x", "--p", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["alpha", "beta"] {
        let path = dir.path().join(format!("{kind}.csv"));
        let out = brunel(&["--out", path.to_str().unwrap(), "table", "--kind", kind, "--n-max", "6", "--p-max", "40"]);
        assert!(out.status.success());
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("n,p,value\n"));
        let rows = read_table_csv(text.as_bytes()).unwrap();
        assert_eq!(rows.len(), 6 * 41);
        for row in rows {
            let want: Rational = if kind == "alpha" { alpha(row.n, row.p) } else { beta(row.n, row.p) };
            assert_eq!(row.value, want, "{kind} n={} p={}", row.n, row.p);
        }
    }
}

#[test]
fn table_json() {
    let out = brunel(&["--format", "json", "table", "--n-max", "2", "--p-max", "2"]);
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 6);
    assert_eq!(v[1]["value"], "0.125");
}

#[test]
fn figure_two_at_origin() {
    let out = brunel(&["figure", "fig2", "--n", "1", "--x", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,x,absdiff"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[2].parse::<f64>().unwrap(), 0.25);
}

#[test]
fn figure_one_marks_k() {
    let out = brunel(&["figure", "fig1", "--n", "10", "--p-max", "60"]);
    let text = stdout(&out);
    assert!(text.starts_with("n,p,diff,kind\n"));
    let marker = text.lines().find(|l| l.ends_with(",K_n")).unwrap();
    let k: f64 = marker.split(',').nth(1).unwrap().parse().unwrap();
    assert!((k - 55.0 / 10.8).abs() < 1e-12);
    assert_eq!(text.lines().filter(|l| l.ends_with(",diff")).count(), 61);
}

#[test]
fn figure_three_default_grid() {
    let out = brunel(&["figure", "fig3", "--n", "40"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 513);
    assert_eq!(text.lines().next(), Some("n,x,value"));
    assert_eq!(stdout(&brunel(&["figure", "fig3", "--n", "40"])), text);
}

#[test]
fn verify_exit_codes() {
    let out = brunel(&["verify", "monotonicity", "--n-max", "25", "--p-max", "120"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["suite"], "monotonicity");
    assert_eq!(v["failed"], 0);

    let out = brunel(&["verify", "alpha0-difference", "--n-max", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["failures"].as_array().unwrap().len() > 0);

    assert_eq!(brunel(&["verify", "bogus"]).status.code(), Some(2));
}

#[test]
fn verify_list() {
    let out = brunel(&["verify", "--list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in ["oracle", "sum-bound", "appendix", "all"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name}");
    }
}

#[test]
fn verify_group_runs_parts() {
    let out = brunel(&["verify", "recurrences", "--n-max", "10", "--p-max", "20", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let parts: Vec<&str> = v["parts"].as_array().unwrap().iter().map(|p| p["suite"].as_str().unwrap()).collect();
    assert_eq!(parts, ["alpha-recurrence", "beta-recurrence"]);
}

#[test]
fn brunel_power_of_identity() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("id2.json");
    fs::write(&path, r#"{"dim": 2, "rows": [[1, 0], [0, 1]]}"#).unwrap();
    let out = brunel(&["operator", "--matrix", path.to_str().unwrap(), "brunel-power", "--n", "1", "--eps", "1e-10"]);
    assert!(out.status.success());
    let v = json(&out);
    let rows = v["matrix"]["rows"].as_array().unwrap();
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.as_array().unwrap().iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((x.as_f64().unwrap() - want).abs() <= 1e-10);
        }
    }
    assert!(v["tail_bound"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn domination_on_stochastic_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("stoch3.json");
    fs::write(&path, r#"{"dim": 3, "rows": [[0.2, 0.5, 0.3], [0.1, 0.6, 0.3], [0.4, 0.4, 0.2]]}"#).unwrap();
    let out = brunel(&["operator", "--matrix", path.to_str().unwrap(), "check-domination", "--N-max", "200"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["failed"], 0);
}

#[test]
fn random_matrix_checks() {
    let out = brunel(&["--seed", "3", "operator", "--random", "doubly", "--dim", "4", "check-power-bound", "--n-max", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let again = brunel(&["--seed", "3", "operator", "--random", "doubly", "--dim", "4", "check-power-bound", "--n-max", "10"]);
    let strip = |mut v: Value| {
        v["elapsed_s"] = Value::Null;
        v
    };
    assert_eq!(strip(json(&out)), strip(json(&again)));
}

#[test]
fn cesaro_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("id2.json");
    fs::write(&path, r#"{"dim": 2, "rows": [[0, 1], [1, 0]]}"#).unwrap();
    let out = brunel(&["--format", "csv", "operator", "--matrix", path.to_str().unwrap(), "cesaro", "--N", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0.5,0.5\n0.5,0.5\n");
}

#[test]
fn appendix_demo() {
    let out = brunel(&["operator", "appendix-demo", "--n", "5"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["n"], 5);
    assert!(v["agreement"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn malformed_matrix_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, r#"{"dim": 2, "rows": [[1, 0]]}"#).unwrap();
    let out = brunel(&["operator", "--matrix", path.to_str().unwrap(), "cesaro", "--N", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    let out = brunel(&["operator", "--matrix", missing.to_str().unwrap(), "cesaro", "--N", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn probe_failure_is_structured() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.json");
    fs::write(&path, r#"{"dim": 1, "rows": [[2]]}"#).unwrap();
    let out = brunel(&["operator", "--matrix", path.to_str().unwrap(), "brunel-power"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["error"]["kind"], "spectral_explosion");
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("coeff.txt");
    let out = brunel(&["--out", path.to_str().unwrap(), "coeff", "--n", "5", "--p", "0"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read_to_string(&path).unwrap().trim(), "1/32");
}
