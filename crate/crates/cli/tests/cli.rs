use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_fueter"));
    c.env_remove("FUETER_TOL");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn f(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

fn series(dir: &TempDir, name: &str, coeffs: &str) -> String {
    let text = format!(r#"{{"center": 0, "coeffs": {coeffs}}}"#);
    write(dir.path(), name, &text).to_str().unwrap().to_string()
}

fn contour(dir: &TempDir) -> String {
    write(dir.path(), "contour.json", r#"{"center": [0, 2], "radius": 0.5, "samples": 256}"#)
        .to_str()
        .unwrap()
        .to_string()
}

#[test]
fn eval_examples() {
    let dir = TempDir::new().unwrap();
    let inv = series(&dir, "inv.json", r#"{"-1": 1}"#);
    let v = json(&run(&["eval", "--series", &inv, "--n", "3", "--point", "0,1,0,0"]));
    assert_eq!(v["schema"], 1);
    let got: Vec<f64> = v["value"].as_array().unwrap().iter().map(f).collect();
    assert_eq!(got, vec![0.0, -4.0, 0.0, 0.0]);

    let one = series(&dir, "one.json", r#"{"0": 1}"#);
    for (n, point) in [("2", "0.3,1,-2"), ("4", "1,0.5,0.1,-0.2,0.3")] {
        let v = json(&run(&["eval", "--series", &one, "--n", n, "--point", point]));
        assert!(v["value"].as_array().unwrap().iter().all(|c| f(c) == 0.0));
    }

    let id = series(&dir, "id.json", r#"{"1": 1}"#);
    let v = json(&run(&["eval", "--series", &id, "--n", "1", "--point", "0.3,-0.7"]));
    let got: Vec<f64> = v["value"].as_array().unwrap().iter().map(f).collect();
    assert_eq!(got, vec![0.3, -0.7]);
}

#[test]
fn numbers_carry_seventeen_digits() {
    let out = run(&["kernel", "--which", "plus", "--n", "2", "--x0", "1", "--r", "1e-4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text.lines().find(|l| l.contains("\"a\"")).unwrap();
    let mantissa = line.split(':').nth(1).unwrap().trim().trim_end_matches(',');
    let digits = mantissa.split('e').next().unwrap().replace(['-', '.'], "");
    assert_eq!(digits.len(), 17, "{mantissa}");
}

#[test]
fn verify_examples() {
    let v = json(&run(&["verify", "--l", "5", "--n", "3"]));
    assert_eq!(v["exact_zero"], true);
    assert_eq!(v["image"], "P^(3)");
    assert_eq!(v["matches_pointwise"], true);

    let v = json(&run(&["verify", "--l", "1", "--n", "3"]));
    assert_eq!(v["in_kernel"], true);
    assert_eq!(v["image"], "zero");

    let v = json(&run(&["verify", "--l", "-2", "--n", "4"]));
    assert!(f(&v["max_residual"]) < 1e-10);
    assert_eq!(v["passed"], true);
}

#[test]
fn table_examples() {
    let out = run(&["table", "--n", "3", "--lmin", "0", "--lmax", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr.headers().unwrap().clone();
    assert_eq!(&header[3], "class");
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 4);
    let l1 = rows.iter().find(|r| &r[2] == "1").unwrap();
    assert_eq!(&l1[3], "zero");
    let l3 = rows.iter().find(|r| &r[2] == "3").unwrap();
    assert_eq!(&l3[3], "P^(1)");
    assert_eq!(&l3[5], "12");
    assert_eq!(l3[4].parse::<f64>().unwrap(), 12.0);

    let v = json(&run(&["table", "--n", "1", "--lmin", "-2", "--lmax", "2", "--format", "json"]));
    for row in v["rows"].as_array().unwrap() {
        let l = row["l"].as_i64().unwrap();
        assert_eq!(row["class"], format!("P^({l})"));
        assert_eq!(row["axis_coefficient_exact"], "1");
        assert_eq!(row["axis_exponent"].as_i64().unwrap(), l);
    }
}

#[test]
fn kernel_examples() {
    let v = json(&run(&["kernel", "--which", "plus", "--n", "2", "--x0", "1", "--r", "1e-4"]));
    assert!((f(&v["a"]) - 0.17678).abs() < 1e-5);
    let v = json(&run(&["kernel", "--which", "minus", "--n", "3", "--x0", "0", "--r", "1e-4"]));
    assert!((f(&v["a"]) + 2.0 / std::f64::consts::PI).abs() < 1e-6);
    let v = json(&run(&["kernel", "--which", "minus", "--n", "3", "--x0", "-1.5", "--r", "0.5", "--quad", "32"]));
    assert_eq!(v["quad"], 32);
}

#[test]
fn inverse_of_zero_sampler_is_zero_series() {
    let dir = TempDir::new().unwrap();
    let zero = series(&dir, "zero.json", "{}");
    let c = contour(&dir);
    let v = json(&run(&["inverse", "--config", &c, "--series", &zero, "--n", "3", "--point", "0.1,2,0,0"]));
    assert_eq!(v["expansion"]["coeffs"].as_object().unwrap().len(), 0);
    let value: Vec<f64> = v["values"][0]["value"].as_array().unwrap().iter().map(f).collect();
    assert_eq!(value, vec![0.0, 0.0]);
}

#[test]
fn inverse_reports_beta_of_reconstruction() {
    let dir = TempDir::new().unwrap();
    let inv = series(&dir, "inv.json", r#"{"-1": 1}"#);
    let c = contour(&dir);
    let v = json(&run(&[
        "inverse", "--config", &c, "--series", &inv, "--n", "3", "--point", "0.1,2.1,0,0", "--lmin", "0", "--lmax", "0",
    ]));
    // beta(1/z) = P^(-1) = 4 conj(x) / |x|^4 at n = 3
    let d2: f64 = 0.1 * 0.1 + 2.1 * 2.1;
    let beta: Vec<f64> = v["values"][0]["beta"].as_array().unwrap().iter().map(f).collect();
    assert!((beta[0] - 0.4 / (d2 * d2)).abs() < 1e-10);
    assert!((beta[1] + 8.4 / (d2 * d2)).abs() < 1e-10);
}

#[test]
fn roundtrip_reports_unit_constant() {
    let dir = TempDir::new().unwrap();
    let cube = series(&dir, "cube.json", r#"{"3": 1}"#);
    let c = contour(&dir);
    let v = json(&run(&["roundtrip", "--config", &c, "--series", &cube, "--n", "3"]));
    assert_eq!(v["passed"], true);
    assert_eq!(v["points"].as_array().unwrap().len(), 8);
    assert!((f(&v["fitted_constant"]) - 1.0).abs() < 1e-6);
    assert!(f(&v["spread"]) < 1e-3);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let inv = series(&dir, "inv.json", r#"{"-1": 1}"#);
    let bad = write(dir.path(), "bad.json", "{not json").to_str().unwrap().to_string();
    let c = contour(&dir);

    // parse and configuration errors
    assert_eq!(run(&["eval", "--series", &bad, "--n", "3", "--point", "0,1,0,0"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--series", &inv, "--n", "3", "--point", "0,1"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--series", "missing.json", "--n", "3", "--point", "0,1,0,0"]).status.code(), Some(2));
    assert_eq!(run(&["kernel", "--which", "plus", "--n", "1", "--x0", "0", "--r", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["roundtrip", "--config", &c, "--series", &inv, "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    let out = bin()
        .env("FUETER_TOL", "abc")
        .args(["inverse", "--config", &c, "--series", &inv, "--n", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // domain and region errors
    assert_eq!(run(&["eval", "--series", &inv, "--n", "3", "--point", "0,0,0,0"]).status.code(), Some(3));
    assert_eq!(run(&["kernel", "--which", "minus", "--n", "3", "--x0", "0", "--r", "1"]).status.code(), Some(3));

    // tolerance violations still print the report
    let out = run(&["verify", "--l", "-2", "--n", "4", "--tol", "0"]);
    assert_eq!(out.status.code(), Some(4));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn output_file_and_determinism() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("table.csv");
    let out = run(&["table", "--n", "4", "--out", target.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let first = std::fs::read(&target).unwrap();
    let again = run(&["table", "--n", "4"]);
    assert_eq!(first, again.stdout);
    let a = run(&["verify", "--l", "-3", "--n", "2"]);
    let b = run(&["verify", "--l", "-3", "--n", "2"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn series_tolerance_from_environment() {
    let dir = TempDir::new().unwrap();
    let inv = series(&dir, "inv.json", r#"{"-1": 1}"#);
    let c = contour(&dir);
    let out = bin()
        .env("FUETER_TOL", "1e-10")
        .args(["roundtrip", "--config", &c, "--series", &inv, "--n", "3"])
        .output()
        .unwrap();
    let v = json(&out);
    assert_eq!(v["passed"], true);
}
