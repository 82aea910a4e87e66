use std::f64::consts::PI;
use std::process::{Command, Output};

use scqmap_core::mapper::{self_intersections, RenderScene};
use scqmap_core::oracle::fit_circle;
use scqmap_core::solvers::TableauPair;
use scqmap_core::Complex64;

fn scqmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scqmap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scqmap_env(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scqmap"))
        .args(args)
        .env("SCQMAP_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn numbers(o: &Output) -> Vec<f64> {
    stdout(o)
        .lines()
        .map(|l| l.trim().parse().unwrap())
        .collect()
}

/// Values of `key=value` tokens on the output.
fn field(o: &Output, key: &str) -> f64 {
    stdout(o)
        .split_whitespace()
        .find_map(|tok| tok.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("no {key} in {}", stdout(o)))
        .parse()
        .unwrap()
}

#[test]
fn lambda_inf_values_and_range() {
    let o = scqmap(&["lambda-inf", "--t-pi", "0.25"]);
    assert!(o.status.success());
    assert!(numbers(&o)[0].abs() < 1e-15);
    let o = scqmap(&["lambda-inf", "--t-pi", "0.125"]);
    assert!((numbers(&o)[0] - 0.25).abs() < 1e-15);
    let o = scqmap(&["lambda-inf", "--t", "2.0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_or_conflicting_angle_is_a_usage_error() {
    assert_eq!(scqmap(&["lambda-inf"]).status.code(), Some(2));
    let o = scqmap(&["lambda-inf", "--t", "0.5", "--t-pi", "0.1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(
        scqmap(&["--M", "7", "lambda-inf", "--t", "0.5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn solve_one_reports_both_roots() {
    let o = scqmap(&[
        "solve-one",
        "--t-pi",
        "0.25",
        "--kappa",
        "0.8",
        "--all-roots",
    ]);
    assert!(o.status.success());
    let r = numbers(&o);
    assert_eq!(r.len(), 2);
    assert!((r[0] + 0.32219).abs() < 1e-4);
    assert!((r[1] + 0.91570).abs() < 1e-4);

    let o = scqmap(&["solve-one", "--t-pi", "0.25", "--kappa", "0"]);
    let r = numbers(&o);
    assert_eq!(r.len(), 1);
    assert!(r[0].abs() < 1e-10);
}

#[test]
fn solve_one_unreachable_curvature_is_numerical_failure() {
    let o = scqmap(&["solve-one", "--t-pi", "0.25", "--kappa", "40"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn solve_two_round_trip() {
    let o = scqmap(&["solve-two", "--kappa1", "-1", "--p2", "2.0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (t, lambda) = (field(&o, "t"), field(&o, "lambda"));
    let g = TableauPair::build(t, 60, 30)
        .unwrap()
        .geometry(lambda)
        .unwrap();
    assert!((g.kappa1 + 1.0).abs() < 1e-6);
    assert!((g.p2 - 2.0).abs() < 1e-6);

    let o = scqmap(&["solve-two", "--kappa1", "0", "--p2", "1"]);
    assert!((field(&o, "t") - PI / 4.0).abs() < 1e-8);
    assert!(field(&o, "lambda").abs() < 1e-8);

    let o = scqmap(&["solve-two", "--kappa1", "3", "--p2", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn map_writes_square_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("square.svg");
    let o = scqmap(&[
        "map",
        "--t-pi",
        "0.25",
        "--lambda",
        "0",
        "--format",
        "svg",
        "--rays",
        "32",
        "--steps",
        "100",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert_eq!(svg.matches("<path").count(), 4);
}

#[test]
fn map_beyond_lambda_max_is_not_schlicht() {
    let scene = |lambda: &str| {
        let o = scqmap(&[
            "map", "--t-pi", "0.25", "--lambda", lambda, "--format", "json", "--steps", "200",
        ]);
        assert!(o.status.success());
        RenderScene::from_json(&stdout(&o)).unwrap()
    };
    assert!(!self_intersections(&scene("1.5").outline(), true).is_empty());
    assert!(self_intersections(&scene("1.4").outline(), true).is_empty());
}

#[test]
fn normalized_map_has_scaled_curvature() {
    let o = scqmap(&[
        "map",
        "--t-pi",
        "0.25",
        "--lambda",
        "-0.32219",
        "--normalize",
        "--format",
        "json",
        "--steps",
        "200",
    ]);
    let scene = RenderScene::from_json(&stdout(&o)).unwrap();
    let right = &scene.boundary[0];
    let fit = fit_circle(right).unwrap();
    let fitted = fit.signed_curvature(right[right.len() / 2], Complex64::new(0.0, 0.0));
    let g = TableauPair::build(PI / 4.0, 60, 30)
        .unwrap()
        .geometry(-0.32219)
        .unwrap();
    assert!((fitted - g.kappa1).abs() < 1e-3, "{fitted} vs {}", g.kappa1);
    assert!((g.kappa - 0.8).abs() < 1e-4);
}

#[test]
fn map_rejects_unknown_format() {
    let o = scqmap(&["map", "--t-pi", "0.25", "--lambda", "0", "--format", "png"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn univalence_table() {
    let o = scqmap(&["univalence", "--samples", "9", "--format", "json"]);
    assert!(o.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 9);
    let get = |r: &serde_json::Value, k: &str| r[k].as_f64().unwrap();
    let mid = &rows[4];
    assert!((get(mid, "t") - PI / 4.0).abs() < 1e-12);
    assert!((get(mid, "lambda_min") + 1.43554).abs() < 1e-4);
    assert!((get(mid, "lambda_max") - 1.43554).abs() < 1e-4);
    for (a, b) in rows.iter().zip(rows.iter().rev()) {
        assert!((get(a, "lambda_min") + get(b, "lambda_max")).abs() < 1e-8);
        let t = get(a, "t");
        assert!((get(a, "lambda_inf") - 0.25 * (2.0 * t).cos() / (2.0 * t).sin()).abs() < 1e-12);
    }
    assert_eq!(
        scqmap(&["univalence", "--samples", "2"]).status.code(),
        Some(2)
    );
}

#[test]
fn univalence_csv_has_header() {
    let o = scqmap(&["univalence", "--samples", "3", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("t,lambda_min,lambda_inf,lambda_max,error\n"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn table_search() {
    let o = scqmap(&[
        "table",
        "--t-pi",
        "0.3",
        "--lambda-offset",
        "-1",
        "--digits",
        "5",
    ]);
    assert!(o.status.success());
    assert!(field(&o, "M") <= 10.0);
    assert!(field(&o, "N") <= 15.0);
}

#[test]
fn verify_single_suite() {
    let o = scqmap(&["verify", "--suite", "schwarzian"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let reports: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reports = reports.as_array().unwrap();
    assert!(!reports.is_empty());
    for r in reports {
        assert!(r["name"].as_str().unwrap().starts_with("schwarzian"));
        assert_eq!(r["passed"], serde_json::Value::Bool(true));
    }
    assert_eq!(
        scqmap(&["verify", "--suite", "nope"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_exit_code_matches_reports() {
    let o = scqmap(&["verify"]);
    let reports: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let all = reports
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["passed"] == serde_json::Value::Bool(true));
    assert_eq!(o.status.code(), Some(if all { 0 } else { 3 }));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["univalence", "--samples", "5", "--format", "csv"];
    let seq = scqmap_env(&args, "0");
    let par = scqmap_env(&args, "3");
    assert!(seq.status.success() && par.status.success());
    assert_eq!(seq.stdout, par.stdout);
    assert_eq!(scqmap(&args).stdout, seq.stdout);
    assert_eq!(scqmap_env(&args, "many").status.code(), Some(2));
}

#[test]
fn t_pi_matches_radians() {
    let t = format!("{}", 0.3 * PI);
    let a = scqmap(&[
        "solve-one",
        "--t-pi",
        "0.3",
        "--kappa",
        "0.5",
        "--all-roots",
    ]);
    let b = scqmap(&["solve-one", "--t", &t, "--kappa", "0.5", "--all-roots"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
