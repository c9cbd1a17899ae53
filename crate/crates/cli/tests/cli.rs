use serde_json::Value;
use std::process::{Command, Output};

fn fraccal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fraccal")).args(args).output().expect("run fraccal")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn gamma_1_5() -> f64 {
    0.5 * std::f64::consts::PI.sqrt()
}

#[test]
fn fracop_geometric_point_value() {
    let out = fraccal(&["fracop", "--builtin", "geometric", "--alpha", "0.5", "--mode", "deriv", "--eval", "0.2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["method"], "series");
    let expect = gamma_1_5() * 1.2f64.powf(-1.5);
    assert!((v["value"][0].as_f64().unwrap() - expect).abs() < 1e-12);
    assert_eq!(v["value"][1].as_f64().unwrap(), 0.0);
}

#[test]
fn fracop_outside_the_disc_uses_the_contour() {
    let out = fraccal(&["fracop", "--builtin", "geometric", "--alpha", "0.5", "--eval", "3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["method"], "contour");
    let expect = gamma_1_5() * 4f64.powf(-1.5);
    assert!((v["value"][0].as_f64().unwrap() - expect).abs() < 1e-8);
}

#[test]
fn fracop_alpha_zero_echoes_the_input() {
    let out = fraccal(&["fracop", "--builtin", "exp", "--alpha", "0", "--eval", "0.7", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[0], "series");
    assert!((row[3].parse::<f64>().unwrap() - 0.7f64.exp()).abs() < 1e-14);

    let series = r#"{"coeffs":[[1,0],[2,0],[3,0]]}"#;
    let v = json(&fraccal(&["fracop", "--series", series, "--alpha", "0"]));
    let c: Vec<f64> = v["coeffs"].as_array().unwrap().iter().map(|x| x[0].as_f64().unwrap()).collect();
    assert_eq!(c, vec![1.0, 2.0, 3.0]);
}

#[test]
fn fracop_complex_order_and_series_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    std::fs::write(&path, r#"{"coeffs":[[0,0],[1,0]]}"#).unwrap();
    let arg = format!("@{}", path.display());
    let v = json(&fraccal(&["fracop", "--series", &arg, "--alpha", "0.3+0.2i", "--mode", "integ"]));
    // I_alpha t = t / Gamma(alpha + 2)
    let c1 = &v["coeffs"][1];
    let (re, im) = (c1[0].as_f64().unwrap(), c1[1].as_f64().unwrap());
    assert!(re.is_finite() && im != 0.0);
    assert_eq!(v["mode"], "integ");
}

#[test]
fn fracop_errors_map_to_exit_codes() {
    let out = fraccal(&["fracop", "--series", "{not json", "--alpha", "0.5"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
    // Re alpha <= -1 is outside the base operators
    assert_eq!(code(&fraccal(&["fracop", "--builtin", "geometric", "--alpha", "-1.5"])), 2);
    // outside the disc, no pointwise form
    let series = r#"{"coeffs":[[1,0],[1,0]],"radius_hint":1.0}"#;
    assert_eq!(code(&fraccal(&["fracop", "--series", series, "--alpha", "0.5", "--eval", "2"])), 2);
    // inside the claimed disc but the truncated series has not settled
    let ones = format!(r#"{{"coeffs":[{}],"radius_hint":2.0}}"#, vec!["[1,0]"; 64].join(","));
    assert_eq!(code(&fraccal(&["fracop", "--series", &ones, "--alpha", "0.5", "--eval", "1.5"])), 3);
    // usage errors
    assert_eq!(code(&fraccal(&["fracop", "--alpha", "0.5"])), 2);
    assert_eq!(code(&fraccal(&["verify", "euler-ltf", "--tol", "1e-20"])), 2);
}

#[test]
fn verify_euler_ltf_passes() {
    let out = fraccal(&["verify", "euler-ltf"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["schema"], "fraccal-report/1");
    assert_eq!(v["seed"], 42);
    assert_eq!(v["pass"], true);
    assert_eq!(v["cases"].as_array().unwrap().len(), 25);
    assert!(v["max_residual"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn verify_watson_depends_on_the_gevrey_constant() {
    assert_eq!(code(&fraccal(&["verify", "watson"])), 0);
    let out = fraccal(&["verify", "watson", "--A", "2"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn verify_all_passes() {
    let out = fraccal(&["verify", "all", "--tol", "1e-3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let suites: std::collections::BTreeSet<&str> = v["cases"].as_array().unwrap().iter().map(|c| c["suite"].as_str().unwrap()).collect();
    assert_eq!(suites.len(), 7);
    assert_eq!(code(&fraccal(&["verify", "all"])), 0);
}

#[test]
fn reports_are_byte_stable() {
    let a = fraccal(&["verify", "jumps"]).stdout;
    let b = fraccal(&["verify", "jumps"]).stdout;
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    let keys = ["\"schema\"", "\"version\"", "\"command\"", "\"suite\"", "\"seed\"", "\"config\"", "\"cases\"", "\"max_residual\"", "\"pass\""];
    // nested objects repeat some keys: the trailing ones are found from the end
    let pos: Vec<usize> = keys.iter().enumerate().map(|(i, k)| if i >= 7 { text.rfind(k) } else { text.find(k) }.unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn seed_changes_the_random_points() {
    let a = fraccal(&["verify", "euler-ltf", "--seed", "1"]).stdout;
    let b = fraccal(&["verify", "euler-ltf", "--seed", "2"]).stdout;
    assert_ne!(a, b);
    assert_eq!(json(&fraccal(&["verify", "euler-ltf", "--seed", "7"]))["seed"], 7);
}

#[test]
fn table_psi_polys() {
    let out = fraccal(&["table", "psi-polys", "--builtin", "geometric", "--n", "3", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "c0,c1,c2,c3\n1,3,3,1\n");
}

#[test]
fn table_asymptotic_remainders() {
    let out = fraccal(&["table", "asymptotic-remainders", "--zeta", "10", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(rows.len(), 25);
    let imin = rows.iter().enumerate().min_by(|a, b| a.1.partial_cmp(b.1).unwrap()).unwrap().0;
    assert!(imin > 3 && imin < 20, "minimum at {imin}");
    assert!(rows[..imin].windows(2).all(|w| w[1] < w[0]));
    assert!(rows[imin..].windows(2).all(|w| w[1] > w[0]));
    assert!(rows[24] > 100.0 * rows[imin]);
}

#[test]
fn table_stokes_grid() {
    let out = fraccal(&["table", "stokes-grid", "--kappa", "0:0.4:0.1", "--mu", "0:0.4:0.1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "kappa,mu,t1_re,t1_im,t2_re,t2_im,goursat");
    assert_eq!(lines.count(), 25);
    let v = json(&fraccal(&["table", "stokes-grid", "--kappa", "0.25", "--mu", "0.25"]));
    // a_1 = 1/2 - kappa - mu = 0: T_1 vanishes
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
    assert!(v["rows"][0][2].as_f64().unwrap().abs() < 1e-14);
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = fraccal(&["table", "psi-polys", "--builtin", "geometric", "--n", "2", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "c0,c1,c2\n1,2,1\n");
}
