use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wres_core::warped::expr::{finite_differences, random_expr};
use wres_core::warped::{
    lemma_components, rw_lower_volumes, rw_spectral_coeffs, BaseCurvature, RWModel, WarpFunction,
};

mod support;

use support::lemma_oracle;

fn check_lemma(expr: &str, c: f64, t: f64) -> ([f64; 4], [f64; 4], [f64; 4]) {
    let w = WarpFunction::parse(expr).unwrap();
    let f = |s: f64| w.derivatives(s).unwrap()[0];
    let d = w.derivatives(t).unwrap();
    let stated = lemma_components(&d, c).as_array();
    let numeric = lemma_oracle(&f, c, t);
    // the conventional sign of the fibre term: R(∂x,∂y)∂x = −(c − f′²) ∂y
    let conventional = [stated[0], stated[1], stated[2], -(c - d[1] * d[1])];
    (stated, numeric, conventional)
}

#[test]
fn lemma_components_against_finite_difference_curvature() {
    for (expr, c, t) in [("1 + t/10", 0.0, 0.0), ("1 + t/10", 1.0, 0.0), ("2 + sin(t)", 0.5, 0.3), ("exp(0.5*t)", -1.0, 0.2)] {
        let (stated, numeric, conventional) = check_lemma(expr, c, t);
        for k in 0..3 {
            assert!((stated[k] - numeric[k]).abs() < 1e-6, "{expr} component {}: {} vs {}", k + 1, stated[k], numeric[k]);
        }
        assert!((conventional[3] - numeric[3]).abs() < 1e-6, "{expr}: {} vs {}", conventional[3], numeric[3]);
    }
}

#[test]
fn fibre_component_sign_differs_from_the_numeric_curvature() {
    let (stated, numeric, _) = check_lemma("1 + t/10", 0.0, 0.0);
    // stated −(f′/f)²⟨X,X⟩ = −0.01, numeric +0.01
    assert!((stated[3] + 0.01).abs() < 1e-15);
    assert!((numeric[3] - 0.01).abs() < 1e-6);
}

#[test]
fn automatic_derivatives_match_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let e = random_expr(&mut rng, 3);
        let t = rng.random_range(0.1..0.9);
        let jet = e.jet(t).unwrap();
        let fd = finite_differences(&|s| e.eval(s), t, 1e-3).unwrap();
        for k in 0..3 {
            let scale = jet.0[k + 1].abs().max(jet.0[0].abs()).max(1.0);
            worst = worst.max((jet.0[k + 1] - fd[k]).abs() / scale);
        }
    }
    assert!(worst < 1e-6, "worst scaled deviation {worst:e}");
}

fn rw(f: &str, a: f64, b: f64, c: f64) -> RWModel {
    RWModel::new(a, b, WarpFunction::parse(f).unwrap(), BaseCurvature::constant(c), 1.0).unwrap()
}

fn close(got: f64, want: f64) -> bool {
    (got - want).abs() <= 1e-9 * want.abs().max(1e-12)
}

#[test]
fn alternative_readings_are_frozen() {
    let sig = RWModel::default_signature();
    let cases = [
        (
            "1 + t/10",
            [0.058778951660511204, -0.10465439541844083, -0.025798906384930258, 0.04728893711897453],
            [0.2418917890662804, 0.012807483395232732, 0.012807483395232732],
            [0.01350427191355146, -0.003023124757852588, 0.0686608139383758, 0.058778951660511204],
        ),
        (
            "exp(t)",
            [0.3222948652511527, -0.9466727236248029, 0.6010651433296574, 0.4680552355754839],
            [1.590787752998974, -1.0344174211262993, -0.8516141550011789],
            [0.2086749699997969, -0.04116915272310072, 3.397880140703487, 0.3222948652511527],
        ),
    ];
    for (f, a, a4, lv) in cases {
        let m = rw(f, 0.0, 1.0, 1.0);
        let co = rw_spectral_coeffs(&m, &sig).unwrap();
        assert!(co.converged, "{f}");
        for k in 0..4 {
            assert!(close(co.a[k], a[k]), "{f} a{k}: {}", co.a[k]);
            assert!(close(co.generic[k], a[k]), "{f} generic a{k}: {}", co.generic[k]);
        }
        assert!(close(co.a4_printed, a4[0]), "{f}: {}", co.a4_printed);
        assert!(close(co.a4_derived, a4[1]), "{f}: {}", co.a4_derived);
        assert!(close(co.a4_derived_general, a4[2]), "{f}: {}", co.a4_derived_general);
        let v = rw_lower_volumes(&m, &sig).unwrap();
        assert!(v.vol_k0_outside_range);
        assert_eq!(v.vol_k0, 0.0);
        for (got, want) in [v.vol_k0_bracket, v.vol_k2, v.vol_k4_literal, v.vol_k4_volume].into_iter().zip(lv) {
            assert!(close(got, want), "{f}: {got} vs {want}");
        }
    }
}

#[test]
fn volume_term_matches_closed_form() {
    // ∫₀¹ (1 + t/10)³ dt = 2.5((1.1)⁴ − 1), prefactor 8/(4π)²
    let m = rw("1 + t/10", 0.0, 1.0, 0.0);
    let co = rw_spectral_coeffs(&m, &RWModel::default_signature()).unwrap();
    let want = 8.0 / (16.0 * std::f64::consts::PI.powi(2)) * 2.5 * (1.1f64.powi(4) - 1.0);
    assert!(close(co.a[0], want));
}
