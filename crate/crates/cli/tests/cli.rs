use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn zerosector(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zerosector"))
        .args(args)
        .env_remove("ZEROSECTOR_DIGITS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn write_coeffs(dir: &Path, name: &str, coeffs: &[String]) -> String {
    let path = dir.join(name);
    std::fs::write(&path, coeffs.join("\n")).unwrap();
    path.to_str().unwrap().to_string()
}

fn f_b(b: f64, n: usize) -> Vec<String> {
    (0..=n)
        .map(|j| format!("{:e}", b.powi(-((j * (j + 1)) as i32))))
        .collect()
}

#[test]
fn every_report_has_the_envelope() {
    for args in [
        vec!["beta0", "--theta", "0.75pi"],
        vec!["theta", "--beta", "2"],
        vec!["kurtz"],
        vec!["roots", "--inline", "1,3,2"],
        vec!["beta", "--inline", "1 6 5 1"],
    ] {
        let out = zerosector(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let v = json(&out);
        for key in ["artifact_version", "digits", "inputs", "result"] {
            assert!(v.get(key).is_some(), "{args:?} lacks {key}");
        }
    }
}

#[test]
fn beta0_at_three_quarter_pi() {
    let v = json(&zerosector(&["beta0", "--theta", "0.75pi"]));
    let b = v["result"]["beta0"].as_f64().unwrap();
    assert!((b - (1.0 + 2f64.sqrt())).abs() < 1e-9);
    assert_eq!(v["result"]["branch"], "OneMinus2Cos");
    assert_eq!(v["result"]["theta"]["input"], "0.75pi");
    assert_eq!(v["result"]["theta"]["pi_fraction"], 0.75);
}

#[test]
fn angle_forms_agree() {
    let a = json(&zerosector(&["beta0", "--theta", "3pi/4"]));
    let b = json(&zerosector(&[
        "beta0",
        "--theta",
        &format!("{}", 0.75 * std::f64::consts::PI),
    ]));
    assert_eq!(a["result"]["beta0"], b["result"]["beta0"]);
}

#[test]
fn certify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_coeffs(dir.path(), "f210.txt", &f_b(2.0, 10));
    let out = zerosector(&["certify", "--coeffs", &f, "--theta", "0.6667pi"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["status"], "Certified");

    let flat = write_coeffs(dir.path(), "flat.txt", &vec!["1".to_string(); 8]);
    let out = zerosector(&["certify", "--coeffs", &flat, "--theta", "0.6pi"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["result"]["status"], "Refused");

    let out = zerosector(&["certify", "--coeffs", &f, "--max"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn errors_and_usage() {
    assert_eq!(
        zerosector(&["beta0", "--theta", "0.1pi"]).status.code(),
        Some(1)
    );
    assert_eq!(
        zerosector(&["beta0", "--theta", "sideways"]).status.code(),
        Some(64)
    );
    assert_eq!(zerosector(&["no-such-command"]).status.code(), Some(64));
    assert_eq!(
        zerosector(&["--digits", "8", "kurtz"]).status.code(),
        Some(64)
    );
    assert_eq!(
        zerosector(&["beta0", "--theta", "pi/2", "--output", "table"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(zerosector(&["--help"]).status.code(), Some(0));
    let missing = zerosector(&["roots", "--coeffs", "/nonexistent/coeffs.txt"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn critical_base_l5_matches_table() {
    let out = zerosector(&["constant-ratio", "--critical", "5", "--digits", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let b0 = v["result"]["b0"].as_str().unwrap();
    assert!(b0.starts_with("1.7982270324863302995970201"), "{b0}");
    assert_eq!(v["digits"], 50);
    assert!(v["result"]["residuals"].is_array());
}

#[test]
fn table_output_lists_both_parities() {
    let out = zerosector(&["constant-ratio", "--output", "table", "--lmax", "7"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("odd l"));
    assert!(text.contains("even l"));
    assert!(text.contains("l = 4   b0 = 1.7989074399478672722612275"));
    assert!(text.contains("l = 7   b0 = 1.7982315382687507032044628"));
}

#[test]
fn digits_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_zerosector"))
        .args(["roots", "--inline", "1,1,1"])
        .env("ZEROSECTOR_DIGITS", "30")
        .output()
        .unwrap();
    let v = json(&out);
    assert_eq!(v["digits"], 30);
    // High-precision coordinates come out as decimal strings.
    assert!(v["result"]["roots"][0]["im"].is_string());
}

#[test]
fn json_array_coefficient_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(&path, r#"["1", 6, "5", "1"]"#).unwrap();
    let v = json(&zerosector(&["beta", "--coeffs", path.to_str().unwrap()]));
    let m = v["result"]["min_beta"].as_f64().unwrap();
    assert!((m - 25.0 / 6.0).abs() < 1e-14);
}

#[test]
fn kurtz_charts() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_coeffs(dir.path(), "f.txt", &f_b(4.5f64.sqrt(), 12));
    let v = json(&zerosector(&["kurtz", "--coeffs", &f, "--annuli"]));
    assert_eq!(v["result"]["one_root"].as_array().unwrap().len(), 12);
    let g = write_coeffs(dir.path(), "g.txt", &f_b(2.0, 7));
    let v = json(&zerosector(&["kurtz", "--coeffs", &g, "--real-chart"]));
    assert_eq!(v["result"]["intervals"].as_array().unwrap().len(), 7);
    let flat = write_coeffs(dir.path(), "flat.txt", &vec!["1".to_string(); 5]);
    assert_eq!(
        zerosector(&["kurtz", "--coeffs", &flat]).status.code(),
        Some(2)
    );
}

#[test]
fn sweep_is_deterministic_for_a_seed() {
    let args = [
        "sweep",
        "--kind",
        "soundness",
        "--count",
        "40",
        "--seed",
        "9",
    ];
    let a = zerosector(&args);
    let b = zerosector(&args);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["result"]["summary"]["violations"], 0);
}

#[test]
fn sweep_writes_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let out = zerosector(&["sweep", "--steps", "5", "--csv", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "index,theta,theta_over_pi,beta0,branch");
    assert_eq!(lines.len(), 6);
}

#[test]
fn paradox_demo_reports_both_sides() {
    let v = json(&zerosector(&["demo-paradox"]));
    let r = &v["result"];
    assert!(r["witness_min_beta"].as_f64().unwrap() > 3.99);
    assert!(r["witness_nonreal_roots"].as_u64().unwrap() >= 2);
    assert_eq!(r["family_all_real"], true);
}
