//! The subcommands, each producing a JSON report, a text summary and an
//! overall pass flag.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use wres_core::boundary::{scenario, BSide, Weighting};
use wres_core::clifford::AlgebraSignature;
use wres_core::heat::config::{parse_config, HeatConfig};
use wres_core::heat::traces::trace_identities;
use wres_core::heat::{boundary_coeffs, interior_coeffs, lower_volume, A4BoundaryForm, HeatCoeffs};
use wres_core::warped::{
    rw_lower_volumes, rw_spectral_action, rw_spectral_coeffs, BaseCurvature, Integral, RWModel, WarpFunction,
};
use wres_core::Result;

use crate::json::{number, quantity};
use crate::oracle;

/// A finished command.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub pass: bool,
}

fn check(name: &str, expected: Value, got: Value, pass: bool) -> Value {
    json!({ "name": name, "expected": expected, "got": got, "pass": pass })
}

fn signature_json(sig: &AlgebraSignature) -> Value {
    json!({ "p": sig.p, "q": sig.q, "total_dim": sig.total_dim() })
}

/// Runs a registered boundary scenario.
pub fn verify_boundary(dim: usize, powers: (usize, usize), sig: Option<AlgebraSignature>) -> Result<Outcome> {
    let s = scenario(dim, powers.0, powers.1, sig)?;
    let (report, checks) = s.check()?;
    let cases: Vec<Value> = report
        .cases
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "index": { "r": c.index.r, "l": c.index.l, "k": c.index.k, "j": c.index.j, "alpha": c.index.alpha },
                "value": quantity(&c.value),
            })
        })
        .collect();
    let checks_json: Vec<Value> =
        checks.iter().map(|c| check(&c.name, quantity(&c.expected), quantity(&c.computed), c.pass())).collect();
    let pass = checks.iter().all(|c| c.pass());
    let conventions = json!({
        "weighting": match s.config.weighting { Weighting::General => "general", Weighting::Unweighted => "unweighted" },
        "cosphere": s.config.cosphere,
        "b_side": match s.config.b_side { BSide::Left => "left", BSide::Right => "right" },
        "integrate_boundary": s.config.integrate_boundary,
    });
    let json = json!({
        "command": "verify-boundary",
        "inputs": {
            "dim": dim,
            "powers": [powers.0, powers.1],
            "signature": signature_json(&s.model.sig),
            "setting": s.source,
            "conventions": conventions,
        },
        "cases": cases,
        "total": quantity(&report.total),
        "checks": checks_json,
        "pass": pass,
    });
    let mut text = format!("boundary term, dimension {dim}, powers ({}, {})\n{}\n", powers.0, powers.1, s.source);
    for c in &report.cases {
        let _ = writeln!(text, "  case {:<5} {}", c.name, c.value);
    }
    let _ = writeln!(text, "  total      {}", report.total);
    for c in &checks {
        let _ = writeln!(text, "  [{}] {}: expected {}", if c.pass() { "pass" } else { "FAIL" }, c.name, c.expected);
    }
    Ok(Outcome { json, text, pass })
}

fn coeffs_json(c: &HeatCoeffs) -> Value {
    let mut m = Map::new();
    for k in 0..5 {
        m.insert(format!("a{k}"), quantity(c.get(k)));
    }
    Value::Object(m)
}

/// Heat coefficients from a curvature document.
pub fn heat(text_in: &str) -> Result<Outcome> {
    let HeatConfig { sig, data, volume, boundary_volume } = parse_config(text_in)?;
    let mut out = Map::new();
    let mut text = format!("heat coefficients, leaf dimension {}, q = {}\n", sig.p, sig.q);
    let coeffs = match &boundary_volume {
        Some(bvol) => {
            let reduced = boundary_coeffs(&sig, &data, &volume, bvol, A4BoundaryForm::Reduced);
            let general = boundary_coeffs(&sig, &data, &volume, bvol, A4BoundaryForm::FromGeneral);
            out.insert("a4_from_general_boundary_formula".into(), quantity(general.get(4)));
            reduced
        }
        None => {
            let c = interior_coeffs(&sig, &data, &volume);
            let mut vols = Map::new();
            for k in 1..=sig.n() {
                if let Ok(v) = lower_volume(&sig, k, &data, &volume) {
                    vols.insert(format!("k{k}"), json!({ "value": quantity(&v.value), "parity_zero": v.parity_zero }));
                }
            }
            out.insert("lower_volumes".into(), Value::Object(vols));
            c
        }
    };
    for k in 0..5 {
        let _ = writeln!(text, "  a{k} = {}", coeffs.get(k));
    }
    let mut checks = Vec::new();
    let mut pass = true;
    if sig.p <= 8 && sig.q <= 6 {
        let ids = trace_identities(&sig);
        let ok = ids.all_hold();
        pass &= ok;
        checks.push(check("trace identities for the signature", Value::Bool(true), Value::Bool(ok), ok));
        let _ = writeln!(text, "  [{}] trace identities", if ok { "pass" } else { "FAIL" });
    }
    out.insert("command".into(), json!("heat"));
    out.insert(
        "inputs".into(),
        json!({
            "signature": signature_json(&sig),
            "volume": quantity(&volume),
            "boundary_volume": boundary_volume.as_ref().map(quantity).unwrap_or(Value::Null),
        }),
    );
    out.insert("coefficients".into(), coeffs_json(&coeffs));
    out.insert("checks".into(), Value::Array(checks));
    out.insert("pass".into(), Value::Bool(pass));
    Ok(Outcome { json: Value::Object(out), text, pass })
}

fn integral_json(i: &Integral) -> Value {
    json!({
        "value": number(i.value),
        "error": number(i.error),
        "evaluations": i.evaluations,
        "doubling_change": number(i.doubling_change),
        "converged": i.converged,
    })
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()) || (a - b).abs() < 1e-15
}

/// Inputs of the warped-product command.
#[derive(Clone, Debug)]
pub struct RwInputs {
    pub f: String,
    pub interval: (f64, f64),
    pub curv: f64,
    pub base_vol: f64,
    pub lambda: Option<f64>,
}

/// Spectral-action coefficients and lower volumes of a warped product.
pub fn rw(inputs: &RwInputs) -> Result<Outcome> {
    let warp = WarpFunction::parse(&inputs.f)?;
    let model = RWModel::new(inputs.interval.0, inputs.interval.1, warp, BaseCurvature::constant(inputs.curv), inputs.base_vol)?;
    let sig = RWModel::default_signature();
    let c = rw_spectral_coeffs(&model, &sig)?;
    let lv = rw_lower_volumes(&model, &sig)?;
    let mut checks = Vec::new();
    let mut pass = true;
    for k in 0..3 {
        let ok = rel_close(c.a[k], c.generic[k], 1e-9);
        pass &= ok;
        checks.push(check(&format!("a{k} closed form vs general formula"), number(c.generic[k]), number(c.a[k]), ok));
    }
    pass &= c.converged;
    checks.push(check("quadrature converged under node doubling", Value::Bool(true), Value::Bool(c.converged), c.converged));
    let endpoints: Vec<Value> = c
        .endpoints
        .iter()
        .map(|e| {
            let data: Map<String, Value> = e.data.entries().iter().map(|(k, v)| (k.to_string(), number(*v))).collect();
            json!({
                "endpoint": e.endpoint.name(),
                "t": number(e.t),
                "derivatives": e.derivatives.iter().map(|x| number(*x)).collect::<Vec<_>>(),
                "volume": number(e.volume),
                "a2_bracket": number(e.a2_bracket),
                "a3_bracket": number(e.a3_bracket),
                "a4_printed_bracket": number(e.a4_printed_bracket),
                "data": data,
            })
        })
        .collect();
    let q = &c.integrals;
    let mut json = json!({
        "command": "rw",
        "inputs": {
            "f": model.warp.to_string(),
            "interval": [number(model.a), number(model.b)],
            "curv": number(inputs.curv),
            "base_vol": number(model.base_vol),
            "signature": signature_json(&sig),
        },
        "coefficients": {
            "a0": number(c.a[0]),
            "a1": number(c.a[1]),
            "a2": number(c.a[2]),
            "a3": number(c.a[3]),
            "a4_printed_bracket": number(c.a4_printed),
            "a4_general_formula_reduced": number(c.a4_derived),
            "a4_general_formula_from_general": number(c.a4_derived_general),
        },
        "general_formula": c.generic.iter().map(|x| number(*x)).collect::<Vec<_>>(),
        "residuals": {
            "a3_closed_minus_general": number(c.a[3] - c.generic[3]),
            "a4_printed_minus_general": number(c.a4_printed - c.a4_derived),
        },
        "lower_volumes": {
            "k0": number(lv.vol_k0),
            "k0_outside_formula_range": lv.vol_k0_outside_range,
            "k0_bracket": number(lv.vol_k0_bracket),
            "k2": number(lv.vol_k2),
            "k4_integrand_times_volume_element": number(lv.vol_k4_literal),
            "k4_integrand_as_volume_element": number(lv.vol_k4_volume),
            "v42": number(lv.v42),
            "v44": number(lv.v44),
        },
        "quadrature": {
            "volume": integral_json(&q.volume),
            "scalar_curvature": integral_json(&q.scalar),
            "a4_interior": integral_json(&q.a4_interior),
            "converged": c.converged,
        },
        "endpoints": endpoints,
        "checks": checks,
        "pass": pass,
    });
    let mut text = format!("warped product [{}, {}] x_f M, f(t) = {}, c = {}\n", model.a, model.b, model.warp, inputs.curv);
    for k in 0..4 {
        let _ = writeln!(text, "  a{k} = {:.12e}  (general formula {:.12e})", c.a[k], c.generic[k]);
    }
    let _ = writeln!(text, "  a4 printed bracket = {:.12e}", c.a4_printed);
    let _ = writeln!(text, "  a4 general formula = {:.12e} (r;N coefficient -51), {:.12e} (+12)", c.a4_derived, c.a4_derived_general);
    let _ = writeln!(text, "  Vol^(2) = {:.12e}", lv.vol_k2);
    let _ = writeln!(text, "  Vol^(4) = {:.12e} (f^3 against f^3 dt), {:.12e} (f^3 dt)", lv.vol_k4_literal, lv.vol_k4_volume);
    let _ = writeln!(text, "  Vol^(0) bracket = {:.12e}, v_(4,0) outside the formula range", lv.vol_k0_bracket);
    if let Some(lambda) = inputs.lambda {
        let s = rw_spectral_action(&c, lambda)?;
        json["spectral_action"] = json!({
            "lambda": number(lambda),
            "cutoff": "exp(-s)",
            "moments": s.moments.iter().map(|x| number(*x)).collect::<Vec<_>>(),
            "with_a4_printed_bracket": number(s.printed),
            "with_a4_general_formula": number(s.derived),
        });
        let _ = writeln!(text, "  spectral action at lambda = {lambda}: {:.12e} / {:.12e}", s.printed, s.derived);
    }
    let _ = writeln!(text, "  [{}] closed forms agree with the general formula and quadrature converged", if pass { "pass" } else { "FAIL" });
    Ok(Outcome { json, text, pass })
}

/// The randomized oracle suite.
pub fn oracle(seed: u64, count: usize) -> Outcome {
    let families = oracle::run_all(seed, count);
    let pass = families.iter().all(|f| f.pass());
    let mut fam = Map::new();
    let mut text = format!("oracle suite, seed {seed}, {count} samples per family\n");
    for f in &families {
        fam.insert(f.name.into(), f.to_json());
        let _ = writeln!(text, "  [{}] {}: {}/{} (worst deviation {:e})", if f.pass() { "pass" } else { "FAIL" }, f.name, f.passed, f.count, f.worst);
    }
    let json = json!({
        "command": "oracle",
        "inputs": { "seed": seed, "count": count },
        "families": fam,
        "pass": pass,
    });
    Outcome { json, text, pass }
}
