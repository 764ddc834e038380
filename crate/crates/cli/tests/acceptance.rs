//! One pass/fail line per acceptance criterion.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::process::Command;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wres_cli::oracle::{derivative_family, quadrature_family, trace_family};
use wres_core::boundary::{res_partial, scenario, ResKind};
use wres_core::clifford::{trace, AlgebraSignature, CliffordElement, Generator};
use wres_core::heat::traces::{derive_interior_coefficients, trace_identities};
use wres_core::heat::{half_leaf_prefactor, interior_prefactor, lower_volume, v_nk, CurvatureData};
use wres_core::symbolic::{q, Exp, GaussianRational, Quantity, RationalXi, ScalarPoly, Symbol, Unit};
use wres_core::warped::{
    lemma_components, rw_lower_volumes, rw_spectral_coeffs, warped_geometry, BaseCurvature, Endpoint, RWModel,
    WarpFunction,
};

struct Verdict {
    pass: bool,
    notes: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Self { pass: true, notes: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.notes.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn within(&mut self, started: Instant, limit: Duration) {
        let took = started.elapsed();
        self.require(took <= limit, format!("took {:.1} s, limit {} s", took.as_secs_f64(), limit.as_secs()));
    }
}

fn scenario_checks(v: &mut Verdict, dim: usize, p1: usize, p2: usize) {
    match scenario(dim, p1, p2, None).and_then(|s| s.check()) {
        Ok((_, checks)) => {
            for c in checks {
                v.require(c.pass(), format!("({dim},{p1},{p2}) {}: got {}, expected {}", c.name, c.computed, c.expected));
            }
        }
        Err(e) => v.require(false, format!("({dim},{p1},{p2}): {e}")),
    }
}

fn dim_four_table() -> Verdict {
    let mut v = Verdict::new();
    let started = Instant::now();
    scenario_checks(&mut v, 4, 1, 1);
    v.within(started, Duration::from_secs(30));
    v
}

fn dim_six_table() -> Verdict {
    let mut v = Verdict::new();
    let started = Instant::now();
    scenario_checks(&mut v, 6, 2, 2);
    if let Ok(r) = scenario(6, 2, 2, None).and_then(|s| s.run()) {
        let sum = match (r.case("b"), r.case("c")) {
            (Some(b), Some(c)) => b + c,
            _ => Quantity::one(),
        };
        v.require(sum.is_zero(), format!("b + c = {sum}"));
    }
    v.within(started, Duration::from_secs(60));
    v
}

fn volume_terms() -> Verdict {
    let mut v = Verdict::new();
    for (dim, p1, p2) in [(3, 1, 1), (5, 2, 2), (5, 2, 1), (4, 2, 1)] {
        scenario_checks(&mut v, dim, p1, p2);
    }
    v
}

fn residue_partials() -> Verdict {
    let mut v = Verdict::new();
    for k in ResKind::all() {
        match res_partial(k) {
            Ok(r) => v.require(r.pass(), format!("{}: integrated {}, expected {}", k.name(), r.integrated, r.expected)),
            Err(e) => v.require(false, format!("{}: {e}", k.name())),
        }
    }
    v
}

fn gaussian(re: i64, im: i64) -> ScalarPoly {
    ScalarPoly::constant(GaussianRational::new(q(re, 1), q(im, 1)))
}

fn residue_engine() -> Verdict {
    let mut v = Verdict::new();
    let started = Instant::now();
    let a = RationalXi::new(vec![gaussian(2, 0), gaussian(0, 1)], 2, 0);
    let b = RationalXi::new(vec![gaussian(-1, 0), gaussian(0, 0), gaussian(3, 0)], 3, 3);
    match (&a * &b).integrate_line_over_pi() {
        Ok(x) => v.require(x == ScalarPoly::rational(q(5, 16)), format!("integral / pi = {x:?}, expected 5/16")),
        Err(e) => v.require(false, e.to_string()),
    }
    let fam = quadrature_family(&mut ChaCha8Rng::seed_from_u64(5), 200);
    v.require(fam.pass() && fam.count == 200, format!("random rational functions: {}/{} {:?}", fam.passed, fam.count, fam.failures));
    v.note(format!("worst relative deviation {:.1e}", fam.worst));
    v.within(started, Duration::from_secs(10));
    v
}

fn word(gs: &[Generator]) -> CliffordElement {
    CliffordElement::from_raw(gs)
}

fn delta(a: u8, b: u8) -> i64 {
    (a == b) as i64
}

/// Printed four-generator identities, with every fibre factor read as the
/// full trace of the identity, on index tuples whose outer indices differ.
fn quartic_identities(v: &mut Verdict) {
    use Generator::*;
    let sig = AlgebraSignature::new(2, 2);
    let d = sig.total_dim() as i64;
    let tr = |gs: &[Generator]| trace(&word(gs), &sig);
    let mut checked = 0;
    let fs = 1..=sig.p as u8;
    let hs = 1..=sig.q as u8;
    for i in fs.clone() {
        for j in fs.clone() {
            for s in hs.clone() {
                for u in hs.clone() {
                    checked += 1;
                    v.require(tr(&[Cf(i), Cf(j), Ch(s), Ch(u)]) == ScalarPoly::int(delta(i, j) * delta(s, u) * d), format!("c(f{i})c(f{j})c(h{s})c(h{u})"));
                    v.require(tr(&[Ch(s), Ch(u), Cf(i), Cf(j)]) == ScalarPoly::int(delta(s, u) * delta(i, j) * d), format!("c(h{s})c(h{u})c(f{i})c(f{j})"));
                }
            }
        }
    }
    for i in fs.clone() {
        for k in fs.clone() {
            for l in fs.clone() {
                for j in fs.clone() {
                    if i == j {
                        continue;
                    }
                    checked += 1;
                    let want = (delta(i, k) * delta(l, j) - delta(i, l) * delta(k, j)) * d;
                    v.require(tr(&[Cf(i), Cf(k), Cf(l), Cf(j)]) == ScalarPoly::int(want), format!("c(f{i})c(f{k})c(f{l})c(f{j})"));
                }
            }
        }
    }
    for s in hs.clone() {
        for r in hs.clone() {
            for t in hs.clone() {
                for u in hs.clone() {
                    if s == u {
                        continue;
                    }
                    checked += 1;
                    let x = &word(&[Ch(s), Hh(r), Hh(t), Ch(u)]) - &word(&[Ch(s), Ch(r), Ch(t), Ch(u)]);
                    let want = -(delta(r, s) * delta(t, u) - delta(r, u) * delta(s, t)) * d;
                    v.require(trace(&x, &sig) == ScalarPoly::int(want), format!("c(h{s})[c^(h{r})c^(h{t}) - c(h{r})c(h{t})]c(h{u})"));
                }
            }
        }
    }
    v.note(format!("{checked} four-generator index tuples"));
}

fn clifford_traces() -> Verdict {
    use Generator::*;
    let mut v = Verdict::new();
    for (p, qq) in [(2, 2), (2, 1), (1, 3), (4, 2), (2, 3)] {
        let sig = AlgebraSignature::new(p, qq);
        let t = trace_identities(&sig);
        v.require(t.all_hold(), format!("tr E, tr E^2, tr Omega^2 at ({p},{qq})"));
    }
    // exterior quartic identity for distinct pairs
    let ext = AlgebraSignature::new(0, 3);
    for s in 1..=3u8 {
        for t in 1..=3u8 {
            for s2 in 1..=3u8 {
                for t2 in 1..=3u8 {
                    if s == t || s2 == t2 {
                        continue;
                    }
                    let want = (delta(t, s2) * delta(s, t2) - delta(t, t2) * delta(s, s2)) * 8;
                    v.require(trace(&word(&[Hh(s), Hh(t), Hh(s2), Hh(t2)]), &ext) == ScalarPoly::int(want), format!("hat quartic {s}{t}{s2}{t2}"));
                }
            }
        }
    }
    // quadratic traces in dimensions three to six, with c(dx_n) the last normal vector
    for sig in [AlgebraSignature::new(2, 1), AlgebraSignature::new(2, 2), AlgebraSignature::new(4, 1), AlgebraSignature::new(4, 2)] {
        let d = sig.total_dim() as i64;
        let n = Ch(sig.q as u8);
        let xi_prime = &word(&[Cf(1)]).scale(&ScalarPoly::rational(q(3, 5))) + &word(&[Cf(2)]).scale(&ScalarPoly::rational(q(4, 5)));
        let cn = word(&[n]);
        v.require(trace(&(&xi_prime * &cn), &sig) == ScalarPoly::int(0), "tr[c(xi')c(dx_n)] = 0");
        v.require(trace(&(&cn * &cn), &sig) == ScalarPoly::int(-d), format!("tr[c(dx_n)^2] = -{d}"));
        v.require(trace(&(&xi_prime * &xi_prime), &sig) == ScalarPoly::int(-d), format!("tr[c(xi')^2] = -{d}"));
    }
    let odd = AlgebraSignature::new(4, 1);
    let xi = &word(&[Cf(1)]) + &word(&[Ch(1)]);
    v.require(trace(&word(&[Cf(3)]), &odd) == ScalarPoly::int(0) && trace(&word(&[Ch(1)]), &odd) == ScalarPoly::int(0) && trace(&xi, &odd) == ScalarPoly::int(0), "odd traces vanish");
    quartic_identities(&mut v);
    let fam = trace_family(&mut ChaCha8Rng::seed_from_u64(6), 500);
    v.require(fam.pass() && fam.count == 500, format!("random words: {}/{} {:?}", fam.passed, fam.count, fam.failures));
    v
}

fn heat_closed_forms() -> Verdict {
    let mut v = Verdict::new();
    for (p, qq) in [(2, 2), (2, 1), (1, 3), (4, 2)] {
        let sig = AlgebraSignature::new(p, qq);
        let t = trace_identities(&sig);
        v.require(t.tr_e == t.closed_tr_e, format!("tr E at ({p},{qq})"));
        v.require(t.tr_e_sq == t.closed_tr_e_sq, format!("tr E^2 at ({p},{qq})"));
        v.require(t.tr_omega_sq == t.closed_tr_omega_sq, format!("tr Omega^2 at ({p},{qq})"));
        match derive_interior_coefficients(&sig) {
            Some(c) => {
                v.require(c.a2_r == q(-1, 12), format!("a2 coefficient {} at ({p},{qq})", c.a2_r));
                let set = (c.a4_r_sq.clone(), c.a4_ric_sq.clone(), c.a4_riem_sq.clone());
                v.require(set == (q(5, 4), q(-2, 1), q(-7, 4)), format!("a4 coefficients {set:?} at ({p},{qq})"));
                v.require(c.a4_perp_sq == (qq >= 2).then(|| q(15, 2)), format!("normal curvature coefficient {:?} at ({p},{qq})", c.a4_perp_sq));
            }
            None => v.require(false, format!("no coefficient set at ({p},{qq})")),
        }
    }
    for half in 1..=3usize {
        for qq in 0..=3usize {
            let sig = AlgebraSignature::new(2 * half, qq);
            v.require(interior_prefactor(&sig) == half_leaf_prefactor(half, qq), format!("a0 prefactor at p = {half}, q = {qq}"));
        }
    }
    v
}

fn constants() -> Verdict {
    let mut v = Verdict::new();
    let inv_pi = Quantity::unit_pow(Unit::Pi, Exp::new(-1, 1));
    let v42_want = (&inv_pi * &Quantity::unit_pow(Unit::Radical(2), Exp::new(-1, 2))).scale_q(&q(1, 2));
    match v_nk(4, 2) {
        Ok(x) => v.require(x == v42_want, format!("v(4,2) = {x}")),
        Err(e) => v.require(false, e.to_string()),
    }
    let pi = std::f64::consts::PI;
    let printed = pi * 30f64.powf(0.2) / (20.0 * pi.powf(0.1));
    match v_nk(5, 1).map(|x| x.to_f64()) {
        Ok(Some((x, _))) => {
            let dev = (x - printed).abs() / printed;
            v.require(dev < 1e-12, format!("v(5,1) = {x:.12e}, printed value {printed:.12e}"));
        }
        other => v.require(false, format!("v(5,1): {other:?}")),
    }
    let sig = AlgebraSignature::new(2, 2);
    let vol = Quantity::unit(Unit::VolInterior);
    let r = Quantity::unit(Unit::Sym(Symbol::ScalarCurv));
    let want = (&(&(&half_leaf_prefactor(1, 2) * &inv_pi) * &Quantity::unit_pow(Unit::Radical(2), Exp::new(-1, 2))) * &(&r * &vol))
        .scale_q(&q(-1, 24));
    match lower_volume(&sig, 2, &CurvatureData::symbolic_interior(), &vol) {
        Ok(x) => v.require(x.value == want, format!("Vol(1,1) interior = {}, expected {want}", x.value)),
        Err(e) => v.require(false, e.to_string()),
    }
    v
}

fn model(f: &str, c: f64) -> RWModel {
    RWModel::new(0.0, 1.0, WarpFunction::parse(f).expect("valid warp"), BaseCurvature::constant(c), 1.0).expect("valid model")
}

fn close(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol * want.abs().max(1e-12)
}

fn warped() -> Verdict {
    let mut v = Verdict::new();
    let base_only = ["r", "r_sq", "ric_sq", "riem_sq", "perp_sq", "r_boundary"];
    let c = 1.0;
    let trivial = model("1", c);
    for (t, e) in [(0.5, None), (0.0, Some(Endpoint::Lower)), (1.0, Some(Endpoint::Upper))] {
        match warped_geometry(&trivial, t, e) {
            Ok(g) => {
                for (name, x) in g.entries() {
                    let want = match name {
                        "r" => 6.0 * c,
                        "r_boundary" if e.is_some() => 6.0 * c,
                        "r_sq" => 36.0 * c * c,
                        "ric_sq" | "riem_sq" | "perp_sq" => 12.0 * c * c,
                        _ => 0.0,
                    };
                    let warp_term = !base_only.contains(&name);
                    v.require(x == want, format!("f = 1, {name} = {x} ({})", if warp_term { "warp term" } else { "base term" }));
                }
            }
            Err(e) => v.require(false, e.to_string()),
        }
    }
    let w = WarpFunction::parse("1 + t/10").expect("valid warp");
    let f = |s: f64| w.derivatives(s).expect("positive warp")[0];
    for (c, t) in [(0.0, 0.0), (1.0, 0.5)] {
        let d = w.derivatives(t).expect("positive warp");
        let stated = lemma_components(&d, c).as_array();
        let numeric = support::lemma_oracle(&f, c, t);
        for k in 0..4 {
            v.require((stated[k] - numeric[k]).abs() < 1e-6, format!("lemma component {} at c = {c}: stated {:.6e}, curvature {:.6e}", k + 1, stated[k], numeric[k]));
        }
    }
    let fam = derivative_family(&mut ChaCha8Rng::seed_from_u64(9), 100);
    v.require(fam.pass() && fam.count == 100, format!("automatic derivatives: {}/{} {:?}", fam.passed, fam.count, fam.failures));
    let sig = RWModel::default_signature();
    for f in ["1 + t/10", "exp(t)", "2 + sin(t)", "cosh(t)"] {
        match rw_spectral_coeffs(&model(f, 1.0), &sig) {
            Ok(co) => {
                for k in 0..3 {
                    v.require(close(co.a[k], co.generic[k], 1e-9), format!("{f}: a{k} {} vs general formula {}", co.a[k], co.generic[k]));
                }
            }
            Err(e) => v.require(false, format!("{f}: {e}")),
        }
    }
    let frozen = [
        ("1 + t/10", [0.2418917890662804, 0.012807483395232732, 0.012807483395232732], [0.0686608139383758, 0.058778951660511204]),
        ("exp(t)", [1.590787752998974, -1.0344174211262993, -0.8516141550011789], [3.397880140703487, 0.3222948652511527]),
    ];
    for (f, a4, vol4) in frozen {
        let m = model(f, 1.0);
        match (rw_spectral_coeffs(&m, &sig), rw_lower_volumes(&m, &sig)) {
            (Ok(co), Ok(lv)) => {
                for (got, want) in [co.a4_printed, co.a4_derived, co.a4_derived_general].into_iter().zip(a4) {
                    v.require(close(got, want, 1e-9), format!("{f}: a4 reading {got} vs frozen {want}"));
                }
                for (got, want) in [lv.vol_k4_literal, lv.vol_k4_volume].into_iter().zip(vol4) {
                    v.require(close(got, want, 1e-9), format!("{f}: Vol^(4) reading {got} vs frozen {want}"));
                }
            }
            (a, b) => v.require(false, format!("{f}: {:?} {:?}", a.err(), b.err())),
        }
    }
    let out = run_wres(&["rw", "--f", "exp(t)", "--interval", "0,1", "--curv", "1", "--base-vol", "1", "--json", "-"]);
    for key in ["a4_printed_bracket", "a4_general_formula_reduced", "a4_general_formula_from_general", "k4_integrand_times_volume_element", "k4_integrand_as_volume_element"] {
        v.require(out.contains(key), format!("rw output lacks {key}"));
    }
    v
}

fn run_wres(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_wres")).args(args).output().expect("the wres binary runs");
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn determinism() -> Verdict {
    let mut v = Verdict::new();
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR"));
    let config = dir.join("acceptance_heat.conf");
    std::fs::write(&config, "p = 1\nq = 2\nvolume = 1\nr = 1/3\nr_sq = 1/9\nric_sq = 1/12\nriem_sq = 1/6\n").expect("temporary config");
    let config = config.to_string_lossy().into_owned();
    let commands: Vec<Vec<&str>> = vec![
        vec!["verify-boundary", "--dim", "4", "--powers", "1,1"],
        vec!["verify-boundary", "--dim", "6", "--powers", "2,2", "--p", "3", "--q", "3"],
        vec!["heat", "--config", &config],
        vec!["rw", "--f", "1 + t/10", "--interval", "0,1", "--curv", "1", "--base-vol", "2", "--lambda", "3"],
        vec!["oracle", "--seed", "11", "--count", "40"],
    ];
    for args in commands {
        let mut full = args.clone();
        full.extend(["--json", "-"]);
        let first = run_wres(&full);
        let second = run_wres(&full);
        v.require(!first.is_empty() && first == second, format!("`wres {}` differs between runs or is empty", args.join(" ")));
    }
    v
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 10] = [
        ("dimension-four boundary table", dim_four_table),
        ("dimension-six boundary table", dim_six_table),
        ("boundary volume terms in dimensions three to five", volume_terms),
        ("residue partials", residue_partials),
        ("residue engine", residue_engine),
        ("Clifford traces", clifford_traces),
        ("heat closed forms", heat_closed_forms),
        ("constants", constants),
        ("warped geometry", warped),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        println!("criterion {:>2} {}: {}", i + 1, if v.pass { "PASS" } else { "FAIL" }, name);
        for n in &v.notes {
            println!("    {n}");
        }
        failed += usize::from(!v.pass);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
