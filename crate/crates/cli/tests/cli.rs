//! End-to-end tests against the compiled binary: record schemas, exit
//! codes, determinism, and the fault-injection escape hatch.

use std::path::Path;
use std::process::{Command, Output};

use serde::{Deserialize, Serialize};

fn supercong(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supercong"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_lines(out: &Output) -> Vec<String> {
    String::from_utf8(out.stdout.clone())
        .expect("utf-8 stdout")
        .lines()
        .map(str::to_string)
        .collect()
}

/// Wire-format contract for congruence records: field order is part of the
/// format, so this struct intentionally re-declares it.
#[derive(Debug, PartialEq, Serialize, Deserialize)]
struct Rec {
    family: String,
    p: u64,
    k: u32,
    lhs: String,
    rhs: String,
    v_diff: serde_json::Value,
    pass: bool,
}

#[test]
fn scan_single_prime_record() {
    let out = supercong(&["scan", "--family", "h2-vh", "--pmin", "3", "--pmax", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 1);
    let rec: Rec = serde_json::from_str(&lines[0]).unwrap();
    assert_eq!(rec.family, "h2-vh");
    assert_eq!(rec.p, 3);
    assert_eq!(rec.k, 2);
    assert!(rec.pass);
}

#[test]
fn scan_range_all_pass_and_round_trips_bytewise() {
    let out = supercong(&[
        "scan",
        "--family",
        "a2-vh",
        "--pmin",
        "3",
        "--pmax",
        "31",
        "--threads",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 10);
    let mut prev_p = 0;
    for line in &lines {
        let rec: Rec = serde_json::from_str(line).unwrap();
        assert!(rec.pass, "{line}");
        assert!(rec.p > prev_p, "records must be sorted by prime");
        prev_p = rec.p;
        assert_eq!(&serde_json::to_string(&rec).unwrap(), line);
    }
}

#[test]
fn scan_output_is_deterministic() {
    let args = ["scan", "--family", "h2-lr", "--pmin", "5", "--pmax", "31"];
    let first = supercong(&args);
    let second = supercong(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn scan_csv_has_header_and_rows() {
    let out = supercong(&[
        "scan", "--family", "h2-vh", "--pmin", "3", "--pmax", "13", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines[0], "family,p,k,lhs,rhs,v_diff,pass");
    assert_eq!(lines.len(), 1 + 5);
    assert!(lines[1].starts_with("h2-vh,3,2,"));
}

#[test]
fn scan_power_override_changes_modulus() {
    let out = supercong(&[
        "scan", "--family", "a2-thm12", "--pmin", "7", "--pmax", "7", "--power", "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rec: Rec = serde_json::from_str(&stdout_lines(&out)[0]).unwrap();
    assert_eq!(rec.k, 3);
    assert_eq!(rec.v_diff, serde_json::json!(3));
}

#[test]
fn identity_records() {
    let out = supercong(&["identity", "--name", "cc5", "--n-max", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 5);
    let first: serde_json::Value = serde_json::from_str(&lines[0]).unwrap();
    assert_eq!(first["name"], "cc5");
    assert_eq!(first["n"], 1);
    assert_eq!(first["lhs"], "3/4");
    assert_eq!(first["pass"], true);

    let chu = supercong(&[
        "identity", "--name", "chu", "--n-max", "5", "--format", "csv",
    ]);
    assert_eq!(chu.status.code(), Some(0));
    let lines = stdout_lines(&chu);
    assert_eq!(lines[0], "name,n,lhs,rhs,pass");
    assert_eq!(lines.len(), 1 + 6);
    assert_eq!(lines[1], "chu,0,1,1,true");
}

#[test]
fn gamma_prints_value_and_sign_exponent() {
    let out = supercong(&["gamma", "--p", "7", "--x", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines[0], "gamma_p(1) mod 7^1 = 6");
    assert_eq!(lines[1], "s_p(1) = 1");

    let quarter = supercong(&["gamma", "--p", "7", "--k", "3", "--x", "1/4"]);
    assert_eq!(quarter.status.code(), Some(0));
    assert!(stdout_lines(&quarter)[0].starts_with("gamma_p(1/4) mod 7^3 = "));

    let negative = supercong(&["gamma", "--p", "13", "--k", "2", "--x", "-3/4"]);
    assert_eq!(negative.status.code(), Some(0));
    assert_eq!(stdout_lines(&negative)[1], "s_p(-3/4) = 9");
}

#[test]
fn usage_errors_exit_two() {
    let bad_x = supercong(&["gamma", "--p", "7", "--x", "1/7"]);
    assert_eq!(bad_x.status.code(), Some(2));
    assert!(!bad_x.stderr.is_empty());

    let bad_family = supercong(&["scan", "--family", "nope", "--pmin", "3", "--pmax", "5"]);
    assert_eq!(bad_family.status.code(), Some(2));

    let bad_range = supercong(&["scan", "--family", "h2-vh", "--pmin", "11", "--pmax", "5"]);
    assert_eq!(bad_range.status.code(), Some(2));

    let bad_prime = supercong(&["gamma", "--p", "9", "--x", "1"]);
    assert_eq!(bad_prime.status.code(), Some(2));

    let bad_out = supercong(&[
        "scan",
        "--family",
        "h2-vh",
        "--pmin",
        "3",
        "--pmax",
        "5",
        "--out",
        "/nonexistent-dir-supercong/x.json",
    ]);
    assert_eq!(bad_out.status.code(), Some(2));

    let no_args = supercong(&[]);
    assert_eq!(no_args.status.code(), Some(2));
}

#[test]
fn out_file_respects_env_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_supercong"))
        .args([
            "scan", "--family", "h2-vh", "--pmin", "3", "--pmax", "7", "--out", "rel.json",
        ])
        .env("SUPERCONG_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(dir.path().join("rel.json")).unwrap();
    assert_eq!(written.lines().count(), 3);

    let absolute = dir.path().join("abs.json");
    let out = Command::new(env!("CARGO_BIN_EXE_supercong"))
        .args(["identity", "--name", "dd1", "--n-max", "5"])
        .arg("--out")
        .arg(&absolute)
        .env("SUPERCONG_OUT_DIR", Path::new("/nonexistent-dir-supercong"))
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "absolute paths ignore the env dir"
    );
    assert_eq!(
        std::fs::read_to_string(absolute).unwrap().lines().count(),
        3
    );
}

#[test]
fn reproduce_capped_passes() {
    let out = supercong(&["reproduce", "--pmax-override", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    let recs: Vec<Rec> = lines
        .iter()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(recs.iter().all(|r| r.pass));
    assert!(recs.iter().all(|r| r.p <= 7));
    // Every family contributes at least one record at this cap.
    for tag in [
        "a2-vh",
        "a2-thm12",
        "a2-conj12",
        "a2-swisher",
        "h2-vh",
        "h2-lr",
        "h2-thm15",
        "step-cc8",
        "step-cc10",
        "step-cc13",
        "step-cc14",
        "step-dd4",
        "step-dd7dd8",
        "j-remark",
    ] {
        assert!(recs.iter().any(|r| r.family == tag), "missing {tag}");
    }
    // Families appear in canonical order.
    let mut seen = Vec::new();
    for r in &recs {
        if seen.last() != Some(&r.family) {
            seen.push(r.family.clone());
        }
    }
    let mut deduped = seen.clone();
    deduped.dedup();
    assert_eq!(seen, deduped, "family blocks must not interleave");

    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("identity chu: 201 orders, 201 pass, 0 fail"));
}

#[test]
fn reproduce_fails_under_gamma_corruption() {
    let out = Command::new(env!("CARGO_BIN_EXE_supercong"))
        .args(["reproduce", "--pmax-override", "7"])
        .env("SUPERCONG_TEST_CORRUPT_GAMMA", "7")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let corrupted: Vec<Rec> = stdout_lines(&out)
        .iter()
        .map(|l| serde_json::from_str(l).unwrap())
        .filter(|r: &Rec| !r.pass)
        .collect();
    assert!(!corrupted.is_empty());
    assert!(corrupted.iter().all(|r| r.p == 7));
}
