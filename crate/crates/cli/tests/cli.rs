use std::path::Path;
use std::process::{Command, Output};

fn stirzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stirzeta"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = stirzeta(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn code(args: &[&str]) -> Option<i32> {
    stirzeta(args).status.code()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn snp_values_and_methods() {
    assert_eq!(ok(&["snp", "--n", "1", "--p", "2"]), "-3/4\n");
    assert_eq!(ok(&["snp", "--n", "0", "--p", "7"]), "1\n");
    for m in ["explicit", "recurrence", "butzer"] {
        assert_eq!(ok(&["snp", "--n", "1", "--p", "2", "--method", m]), "-3/4\n");
        assert_eq!(ok(&["snp", "--n", "2", "--p", "2", "--method", m]), "11/36\n");
    }
    assert_eq!(ok(&["snp", "--n", "1", "--p", "2", "--format", "dec", "--digits", "3"]), "-0.750\n");
}

#[test]
fn snp_rejects_bad_arguments() {
    assert_eq!(code(&["snp", "--n", "1", "--p", "0"]), Some(2));
    assert_eq!(code(&["snp", "--n", "1", "--p", "2", "--method", "magic"]), Some(2));
    assert_eq!(code(&["snp", "--n", "-1", "--p", "2"]), Some(2));
}

#[test]
fn stirling1_values() {
    assert_eq!(ok(&["stirling1", "--n", "3", "--k", "2"]), "-3\n");
    assert_eq!(ok(&["stirling1", "--n", "5", "--k", "5"]), "1\n");
    assert_eq!(ok(&["stirling1", "--n", "4", "--k", "0"]), "0\n");
    assert_eq!(code(&["stirling1", "--n", "2", "--k", "3"]), Some(2));
}

#[test]
fn zeta_values() {
    let d = ok(&["zeta", "--p", "2", "--N", "10", "--format", "dec", "--digits", "6"]);
    let v: f64 = d.trim().parse().unwrap();
    assert!((v - 1.644934).abs() < 1e-2);
    assert_eq!(d.trim().split('.').nth(1).unwrap().len(), 6);
    // golden fraction checked against an independent script
    assert_eq!(ok(&["zeta", "--p", "3", "--N", "3", "--format", "frac"]), golden("zeta_p3_n3.txt"));
    assert_eq!(code(&["zeta", "--p", "2", "--N", "1"]), Some(2));
    assert_eq!(code(&["zeta", "--p", "1", "--N", "4"]), Some(2));
}

#[test]
fn zeta_limit_override_warns() {
    let o = stirzeta(&["zeta", "--p", "2", "--N", "4", "--limit-override", "16,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    // the default limits reproduce the plain approximant
    assert_eq!(stdout(&o), ok(&["zeta", "--p", "2", "--N", "4"]));
    let o = stirzeta(&["zeta", "--p", "2", "--N", "4", "--limit-override", "8,0"]);
    assert_ne!(stdout(&o), ok(&["zeta", "--p", "2", "--N", "4"]));
    assert_eq!(code(&["zeta", "--p", "2", "--N", "4", "--limit-override", "8"]), Some(2));
}

#[test]
fn oracle_digits() {
    let out = ok(&["oracle", "--p", "2", "--digits", "20"]);
    assert_eq!(out.lines().next(), Some("1.64493406684822643647"));
    assert!(out.lines().nth(1).unwrap().starts_with("radius <= 1e-"));
    let out = ok(&["oracle", "--p", "3", "--digits", "20"]);
    assert_eq!(out.lines().next(), Some("1.20205690315959428540"));
    assert_eq!(code(&["oracle", "--p", "1", "--digits", "5"]), Some(2));
    assert_eq!(code(&["oracle", "--p", "2", "--digits", "0"]), Some(2));
}

#[test]
fn sweep_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("errs.csv");
    let summary = ok(&[
        "sweep", "--p", "3", "--n-min", "6", "--n-max", "22", "--step", "4", "--out",
        path.to_str().unwrap(),
    ]);
    let slope: f64 = summary
        .split("= ")
        .nth(2)
        .and_then(|s| s.split_whitespace().next())
        .unwrap()
        .parse()
        .unwrap();
    assert!(slope <= -0.9, "{summary}");

    let mut rdr = csv::Reader::from_path(&path).unwrap();
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        ["p", "N", "zeta_N_decimal", "abs_err", "ln_abs_err", "ratio_err_eN_over_N"]
    );
    let errs: Vec<f64> = rdr
        .records()
        .map(|r| r.unwrap()[3].parse().unwrap())
        .collect();
    assert_eq!(errs.len(), 5);
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    let text = std::fs::read_to_string(&path).unwrap();
    for row in text.lines().skip(1) {
        assert!(!row.contains(['e', 'E']), "scientific notation in {row}");
    }
}

#[test]
fn sweep_golden_and_deterministic() {
    let csv = ok(&["sweep", "--p", "2", "--n-min", "4", "--n-max", "8", "--step", "2"]);
    assert_eq!(csv, golden("sweep_p2.csv"));
    let args = ["sweep", "--p", "3", "--n-min", "3", "--n-max", "5", "--step", "2", "--format", "json", "--digits", "20"];
    let json = ok(&args);
    assert_eq!(json, golden("sweep_p3.json"));
    assert_eq!(json, ok(&args));
}

#[test]
fn sweep_json_schema() {
    let json = ok(&["sweep", "--p", "2", "--n-min", "5", "--n-max", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let rec = v.as_array().unwrap()[0].as_object().unwrap();
    let keys = ["p", "N", "numerator", "denominator", "decimal", "oracle_mid", "oracle_radius", "abs_err"];
    assert_eq!(rec.len(), keys.len());
    // fixed key order in the emitted text
    let pos: Vec<usize> = keys.iter().map(|k| json.find(&format!("\"{k}\":")).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{json}");
    for k in &keys[2..] {
        assert!(rec[*k].is_string(), "{k}");
    }
    assert_eq!(rec["N"], 5);
}

#[test]
fn sweep_errors() {
    assert_eq!(code(&["sweep", "--p", "3", "--n-min", "10", "--n-max", "6"]), Some(2));
    assert_eq!(code(&["sweep", "--p", "3", "--n-min", "6", "--n-max", "10", "--step", "0"]), Some(2));
    assert_eq!(code(&["sweep", "--p", "3", "--n-min", "2", "--n-max", "6"]), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing").join("out.csv");
    assert_eq!(
        code(&["sweep", "--p", "3", "--n-min", "6", "--n-max", "10", "--out", bad.to_str().unwrap()]),
        Some(3)
    );
}

#[test]
fn verify_suites() {
    for suite in ["stirling", "gf"] {
        let out = ok(&["verify", "--suite", suite]);
        assert!(out.lines().last().unwrap().ends_with(" 0 failed"), "{out}");
        assert!(out.lines().filter(|l| l.starts_with("PASS")).count() >= 3);
    }
    assert_eq!(code(&["verify", "--suite", "nope"]), Some(2));
}
