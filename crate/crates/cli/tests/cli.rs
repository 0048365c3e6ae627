use std::collections::BTreeSet;
use std::process::{Command, Output};

fn qstoch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qstoch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn reduce_boson_commutator() {
    let o = qstoch(&["reduce", "b[1] bd[1]"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "bd[1] b[1] + 1");
}

#[test]
fn reduce_fraktur_anticommutator() {
    let o = qstoch(&["reduce", "--stat", "fermion", "fb[1] fbd[1] + fbd[1] fb[1]"]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = qstoch(&["reduce", "--stat", "fermion", "fb[1] fbd[2] + fbd[2] fb[1]"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn reflection_squares_to_one() {
    for stat in ["boson", "fermion"] {
        let o = qstoch(&["reduce", "--stat", stat, "J[1] J[1]"]);
        assert_eq!(stdout(&o).trim(), "1");
    }
}

#[test]
fn expect_sets_exit_status() {
    let ok = qstoch(&["reduce", "--stat", "fermion", "J[2] b[1]", "--expect", "-b[1] J[2]"]);
    assert_eq!(code(&ok), 0);
    let bad = qstoch(&["reduce", "--stat", "fermion", "J[2] b[1]", "--expect", "b[1] J[2]"]);
    assert_eq!(code(&bad), 1);
    let boson = qstoch(&["reduce", "J[2] b[1]", "--expect", "b[1] J[2]"]);
    assert_eq!(code(&boson), 0);
}

#[test]
fn parse_errors_are_usage_errors() {
    let o = qstoch(&["reduce", "b[0]"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("slot indices start at 1"));
    let o = qstoch(&["reduce", "b[1] +\n q[1]"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:2"));
    let o = qstoch(&["reduce", "--slots", "2", "b[3]"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn tau_vacuum_expectation_is_reported() {
    let o = qstoch(&["reduce", "--stat", "fermion", "--mean", "vacuum", "tau"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("tau"));
    let o = qstoch(&["reduce", "--mean", "vacuum", "b[1] bd[1]"]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn thermal_mean() {
    let o = qstoch(&[
        "reduce",
        "--stat",
        "fermion",
        "--mean",
        "thermal",
        "--nbar",
        "1/5",
        "fbd[1] fb[1]",
    ]);
    assert_eq!(stdout(&o).trim(), "1/5");
    let o = qstoch(&["reduce", "--mean", "thermal", "fb[1] fbd[1]"]);
    assert_eq!(stdout(&o).trim(), "1 + nbar");
}

fn table_json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["table", "--format", "json"];
    full.extend_from_slice(args);
    let o = qstoch(&full);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn entry<'a>(v: &'a serde_json::Value, row: &str, col: &str) -> &'a str {
    v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["row"] == row && e["col"] == col)
        .expect("entry present")["coeff_string"]
        .as_str()
        .unwrap()
}

#[test]
fn fermion_table_entries() {
    let v = table_json(&["--stat", "fermion"]);
    let allowed: BTreeSet<&str> = [
        "0",
        "(1 - nbar) dt",
        "nbar dt",
        "i nbar dt",
        "i (1 - nbar) dt",
        "-i nbar dt",
        "-i (1 - nbar) dt",
    ]
    .into();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 25);
    for e in entries {
        assert!(allowed.contains(e["coeff_string"].as_str().unwrap()), "{e}");
    }
}

#[test]
fn boson_vacuum_table() {
    let v = table_json(&["--stat", "boson", "--nbar", "0", "--vacuum"]);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 9);
    for e in entries {
        let want = if e["row"] == "dB" && e["col"] == "dBd" {
            "dt"
        } else {
            "0"
        };
        assert_eq!(e["coeff_string"], want);
    }
}

#[test]
fn boson_table_at_half() {
    let v = table_json(&["--stat", "boson", "--nbar", "1/2"]);
    assert_eq!(entry(&v, "dB", "dBd"), "3/2 dt");
    assert_eq!(entry(&v, "dBd", "dB"), "1/2 dt");
    let w = table_json(&["--stat", "boson", "--nbar", "1/2", "--route", "c-moments"]);
    assert_eq!(v, w);
}

#[test]
fn table_rejects_bad_input() {
    assert_eq!(code(&qstoch(&["table", "--stat", "fermion", "--nbar", "1"])), 2);
    assert_eq!(code(&qstoch(&["table", "--route", "nope"])), 2);
    assert_eq!(code(&qstoch(&["table", "--nbar", "-1/2"])), 2);
}

#[test]
fn table_output_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = qstoch(&[
            "table",
            "--stat",
            "fermion",
            "--format",
            "json",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn verify_fermion_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = qstoch(&[
        "verify",
        "--stat",
        "fermion",
        "--slots",
        "4",
        "--nbar",
        "0.2",
        "--dt",
        "0.1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("all checks passed"));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(report["config"]["dimension"], 256);
    assert!(report["wall_time"].is_null());
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn verify_refuses_oversized_lattice() {
    let o = qstoch(&["verify", "--slots", "20", "--stat", "boson", "--cutoff", "16"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("18^40"));
}

#[test]
fn verify_needs_numeric_nbar() {
    assert_eq!(code(&qstoch(&["verify", "--nbar", "nbar"])), 2);
}

#[test]
fn verify_failure_exit_status() {
    let o = qstoch(&[
        "verify", "--stat", "boson", "--slots", "1", "--cutoff", "4", "--nbar", "0.5", "--tol", "1e-12",
    ]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
}

#[test]
fn constraints_unique_solutions() {
    let o = qstoch(&["constraints", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        (v[0]["sigma_lt"].as_i64(), v[0]["sigma_gt"].as_i64()),
        (Some(1), Some(1))
    );
    assert_eq!(
        (v[1]["sigma_lt"].as_i64(), v[1]["sigma_gt"].as_i64()),
        (Some(-1), Some(1))
    );
}

#[test]
fn verify_report_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("a.json"), dir.path().join("b.json")];
    for p in &paths {
        let o = qstoch(&[
            "verify",
            "--stat",
            "fermion",
            "--slots",
            "2",
            "--nbar",
            "1/5",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
    }
    assert_eq!(std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
}
