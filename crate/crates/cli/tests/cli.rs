use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn wres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wres")).args(args).output().expect("the wres binary runs")
}

fn json(args: &[&str]) -> (Value, bool) {
    let mut full = args.to_vec();
    full.extend(["--json", "-"]);
    let out = wres(&full);
    let v = serde_json::from_slice(&out.stdout).expect("valid JSON on standard output");
    (v, out.status.success())
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn config(name: &str, text: &str) -> String {
    let p: PathBuf = [env!("CARGO_TARGET_TMPDIR"), name].iter().collect();
    std::fs::write(&p, text).expect("temporary config");
    p.to_string_lossy().into_owned()
}

#[test]
fn dimension_four_boundary_report() {
    let (v, ok) = json(&["verify-boundary", "--dim", "4", "--powers", "1,1"]);
    assert!(ok);
    assert_eq!(v["pass"], true);
    let names: Vec<&str> = v["cases"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["aI", "aII", "aIII", "b", "c"]);
    assert_eq!(v["cases"][1]["value"]["coef"], "-3/4");
    assert_eq!(v["total"]["coef"], "0");
    assert_eq!(v["inputs"]["signature"]["total_dim"], 8);
}

#[test]
fn unregistered_boundary_scenario_fails() {
    let out = wres(&["verify-boundary", "--dim", "9", "--powers", "1,1"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("unregistered scenario"), "{}", stderr(&out));
}

#[test]
fn heat_example_scalar_curvature_term() {
    let path = config("cli_heat.conf", "p = 2\nq = 2\nvolume = 1\nr = 1\n");
    let (v, ok) = json(&["heat", "--config", &path]);
    assert!(ok);
    // a2 = -1/(12 * 2^2 * pi^3) for unit volume and unit scalar curvature
    assert_eq!(v["coefficients"]["a2"]["coef"], "-1/48");
    assert_eq!(v["coefficients"]["a2"]["unit"], serde_json::json!(["pi^(-3)"]));
    let want = -1.0 / (48.0 * std::f64::consts::PI.powi(3));
    assert!((v["coefficients"]["a2"]["numeric"].as_f64().unwrap() - want).abs() < 1e-15);
    assert!(v["lower_volumes"].is_object());
}

#[test]
fn heat_boundary_document_reports_both_a4_readings() {
    let path = config("cli_heat_boundary.conf", "p = 1\nq = 2\nvolume = 1\nboundary_volume = 1\nr = 1\nl_aa = 1/2\nr_n = 1\n");
    let (v, ok) = json(&["heat", "--config", &path]);
    assert!(ok);
    assert!(v["a4_from_general_boundary_formula"].is_object());
    assert_ne!(v["coefficients"]["a1"]["coef"], "0");
}

#[test]
fn malformed_heat_key_is_positioned() {
    let path = config("cli_heat_bad.conf", "p = 2\nq = 2\nvolum = 1\n");
    let out = wres(&["heat", "--config", &path]);
    assert!(!out.status.success());
    let e = stderr(&out);
    assert!(e.contains("line 3") && e.contains("column 1") && e.contains("volum"), "{e}");
}

#[test]
fn constant_warp_on_flat_base_has_no_curvature_terms() {
    let (v, ok) = json(&["rw", "--f", "1", "--interval", "0,1", "--curv", "0", "--base-vol", "1"]);
    assert!(ok);
    for k in ["a2", "a3", "a4_printed_bracket", "a4_general_formula_reduced"] {
        assert_eq!(v["coefficients"][k].as_f64(), Some(0.0), "{k}");
    }
    // only the two boundary copies of the base survive in a1: -D/4 (4 pi)^(-3/2) each, D = 8
    let a1 = v["coefficients"]["a1"].as_f64().unwrap();
    assert!((a1 + 4.0 / (4.0 * std::f64::consts::PI).powf(1.5)).abs() < 1e-14, "{a1}");
}

#[test]
fn rw_reports_spectral_action_when_asked() {
    let (v, ok) = json(&["rw", "--f", "1 + t/10", "--interval", "0,1", "--curv", "1", "--base-vol", "1", "--lambda", "2"]);
    assert!(ok);
    assert_eq!(v["spectral_action"]["cutoff"], "exp(-s)");
    assert_eq!(v["inputs"]["f"], "1 + t/10");
    assert_eq!(v["lower_volumes"]["k0_outside_formula_range"], true);
}

#[test]
fn logarithmic_warp_is_a_domain_error() {
    let out = wres(&["rw", "--f", "ln(t)", "--interval", "0,1"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("domain error"), "{}", stderr(&out));
}

#[test]
fn warp_syntax_error_carries_offset() {
    let out = wres(&["rw", "--f", "sin(t) + foo(t)", "--interval", "0,1"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("byte 9"), "{}", stderr(&out));
}

#[test]
fn empty_oracle_run_passes() {
    let (v, ok) = json(&["oracle", "--seed", "1", "--count", "0"]);
    assert!(ok);
    assert_eq!(v["pass"], true);
    assert_eq!(v["families"]["trace"]["count"], 0);
}

#[test]
fn json_file_output_matches_standard_output() {
    let path: PathBuf = [env!("CARGO_TARGET_TMPDIR"), "cli_oracle.json"].iter().collect();
    let out = wres(&["oracle", "--seed", "2", "--count", "5", "--json", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("oracle suite"));
    let written = std::fs::read(&path).unwrap();
    let piped = wres(&["oracle", "--seed", "2", "--count", "5", "--json", "-"]).stdout;
    assert_eq!(written, piped);
}
