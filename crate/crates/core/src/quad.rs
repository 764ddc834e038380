//! Adaptive Gauss–Kronrod (G7/K15) quadrature with global error control.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Result, WresError};

/// Default relative tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

const MAX_PANELS: usize = 4000;

/// Relative tolerance, overridable through `WRES_QUAD_TOL`.
pub fn tolerance() -> f64 {
    std::env::var("WRES_QUAD_TOL")
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t > 0.0)
        .unwrap_or(DEFAULT_TOL)
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Result of an adaptive integration.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
    pub panels: Vec<(f64, f64)>,
}

/// Complex-valued variant.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadResultC {
    pub value: (f64, f64),
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    val: (f64, f64),
    err: f64,
    abs: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err).then(o.a.total_cmp(&self.a))
    }
}

/// Kronrod value, error estimate and Kronrod integral of `|f|`.
fn gk15(f: &mut dyn FnMut(f64) -> (f64, f64), a: f64, b: f64) -> ((f64, f64), f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = (fc.0 * WGK[7], fc.1 * WGK[7]);
    let mut abs = fc.0.hypot(fc.1) * WGK[7];
    let mut g = (fc.0 * WG[3], fc.1 * WG[3]);
    for j in 0..7 {
        let x = h * XGK[j];
        let f1 = f(c - x);
        let f2 = f(c + x);
        abs += WGK[j] * (f1.0.hypot(f1.1) + f2.0.hypot(f2.1));
        let s = (f1.0 + f2.0, f1.1 + f2.1);
        k.0 += WGK[j] * s.0;
        k.1 += WGK[j] * s.1;
        if j % 2 == 1 {
            g.0 += WG[j / 2] * s.0;
            g.1 += WG[j / 2] * s.1;
        }
    }
    let val = (k.0 * h, k.1 * h);
    let err = ((k.0 - g.0) * h).hypot((k.1 - g.1) * h);
    (val, err, abs * h.abs())
}

fn adaptive(f: &mut dyn FnMut(f64) -> (f64, f64), a: f64, b: f64, tol: f64) -> Result<(QuadResultC, Vec<(f64, f64)>)> {
    let mut heap = BinaryHeap::new();
    let (v, e, s) = gk15(f, a, b);
    heap.push(Panel { a, b, val: v, err: e, abs: s });
    let mut evals = 15;
    loop {
        let (mut sr, mut si, mut se, mut sa) = (0.0, 0.0, 0.0, 0.0);
        for p in heap.iter() {
            sr += p.val.0;
            si += p.val.1;
            se += p.err;
            sa += p.abs;
        }
        if !sr.is_finite() || !si.is_finite() {
            return Err(WresError::Quadrature { error: f64::INFINITY, tolerance: tol });
        }
        let scale = sr.hypot(si);
        let floor = 50.0 * f64::EPSILON * sa;
        if se <= tol * scale || se <= floor || se <= 1e-300 {
            let mut panels: Vec<(f64, f64)> = heap.iter().map(|p| (p.a, p.b)).collect();
            panels.sort_by(|x, y| x.0.total_cmp(&y.0));
            return Ok((QuadResultC { value: (sr, si), error: se, evaluations: evals }, panels));
        }
        if heap.len() >= MAX_PANELS {
            return Err(WresError::Quadrature { error: se, tolerance: tol * scale });
        }
        let worst = heap.pop().expect("nonempty heap");
        let m = 0.5 * (worst.a + worst.b);
        if m <= worst.a || m >= worst.b {
            return Err(WresError::Quadrature { error: se, tolerance: tol * scale });
        }
        let (v1, e1, s1) = gk15(f, worst.a, m);
        let (v2, e2, s2) = gk15(f, m, worst.b);
        evals += 30;
        heap.push(Panel { a: worst.a, b: m, val: v1, err: e1, abs: s1 });
        heap.push(Panel { a: m, b: worst.b, val: v2, err: e2, abs: s2 });
    }
}

/// `∫_a^b f` for a real integrand with relative tolerance `tol`.
pub fn integrate(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    let mut g = |x: f64| (f(x), 0.0);
    let (r, panels) = adaptive(&mut g, a, b, tol)?;
    Ok(QuadResult { value: r.value.0, error: r.error, evaluations: r.evaluations, panels })
}

/// `∫_a^b f` for a complex integrand.
pub fn integrate_complex(mut f: impl FnMut(f64) -> (f64, f64), a: f64, b: f64, tol: f64) -> Result<QuadResultC> {
    Ok(adaptive(&mut f, a, b, tol)?.0)
}

/// `∫_{−∞}^{∞} f` via `x = t/(1−t²)`.
pub fn integrate_real_line_complex(mut f: impl FnMut(f64) -> (f64, f64), tol: f64) -> Result<QuadResultC> {
    let g = move |t: f64| {
        let d = 1.0 - t * t;
        let x = t / d;
        let w = (1.0 + t * t) / (d * d);
        let v = f(x);
        (v.0 * w, v.1 * w)
    };
    integrate_complex(g, -1.0, 1.0, tol)
}

/// `∫_a^∞ f` via `x = a + t/(1−t)`.
pub fn integrate_semi_infinite(mut f: impl FnMut(f64) -> f64, a: f64, tol: f64) -> Result<QuadResult> {
    let g = move |t: f64| {
        let d = 1.0 - t;
        f(a + t / d) / (d * d)
    };
    integrate(g, 0.0, 1.0, tol)
}

/// Complex variant of [`integrate_semi_infinite`].
pub fn integrate_semi_infinite_complex(mut f: impl FnMut(f64) -> (f64, f64), a: f64, tol: f64) -> Result<QuadResultC> {
    let g = move |t: f64| {
        let d = 1.0 - t;
        let v = f(a + t / d);
        (v.0 / (d * d), v.1 / (d * d))
    };
    integrate_complex(g, 0.0, 1.0, tol)
}

/// Re-evaluates on the final panels with each panel halved (doubling the node
/// count) and returns the absolute change.
pub fn doubling_change(mut f: impl FnMut(f64) -> f64, r: &QuadResult) -> f64 {
    let mut g = |x: f64| (f(x), 0.0);
    let mut total = 0.0;
    for &(a, b) in &r.panels {
        let m = 0.5 * (a + b);
        total += gk15(&mut g, a, m).0 .0 + gk15(&mut g, m, b).0 .0;
    }
    (total - r.value).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_transcendental() {
        let r = integrate(|x| x * x, 0.0, 3.0, 1e-12).unwrap();
        assert!((r.value - 9.0).abs() < 1e-12);
        let r = integrate(f64::sin, 0.0, std::f64::consts::PI, 1e-12).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn infinite_ranges() {
        let r = integrate_real_line_complex(|x| (1.0 / (1.0 + x * x), 0.0), 1e-12).unwrap();
        assert!((r.value.0 - std::f64::consts::PI).abs() < 1e-10);
        let r = integrate_semi_infinite(|x| (-x).exp(), 0.0, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn doubling_is_stable() {
        let f = |x: f64| (3.0 * x).cos() * x.exp();
        let r = integrate(f, 0.0, 2.0, 1e-10).unwrap();
        assert!(doubling_change(f, &r) <= 1e-10 * r.value.abs().max(1.0));
    }
}
