//! Randomized cross-checks: symbolic traces against explicit matrices,
//! exact line integrals against adaptive quadrature, and third-order
//! automatic derivatives against finite differences.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wres_core::clifford::{trace, AlgebraSignature, CliffordElement, Generator, MatrixRep};
use wres_core::quad;
use wres_core::symbolic::{GaussianRational, RationalXi, ScalarPoly};
use wres_core::warped::expr::{finite_differences, random_expr};

use crate::json::number;

/// Summary of one oracle family.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyReport {
    pub name: &'static str,
    pub count: usize,
    pub passed: usize,
    pub worst: f64,
    pub failures: Vec<String>,
}

impl FamilyReport {
    fn new(name: &'static str) -> Self {
        Self { name, count: 0, passed: 0, worst: 0.0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, deviation: f64, describe: impl FnOnce() -> String) {
        self.count += 1;
        self.worst = self.worst.max(deviation);
        if ok {
            self.passed += 1;
        } else if self.failures.len() < 5 {
            self.failures.push(describe());
        }
    }

    pub fn pass(&self) -> bool {
        self.passed == self.count
    }

    pub fn to_json(&self) -> Value {
        json!({
            "count": self.count,
            "passed": self.passed,
            "worst_deviation": number(self.worst),
            "failures": self.failures,
            "pass": self.pass(),
        })
    }
}

fn random_generator(rng: &mut ChaCha8Rng, sig: &AlgebraSignature) -> Generator {
    let total = sig.p + 2 * sig.q;
    let k = rng.random_range(0..total);
    if k < sig.p {
        Generator::Cf(k as u8 + 1)
    } else if k < sig.p + sig.q {
        Generator::Ch((k - sig.p) as u8 + 1)
    } else {
        Generator::Hh((k - sig.p - sig.q) as u8 + 1)
    }
}

/// Random words in signatures with `p, q ≤ 3`.
pub fn trace_family(rng: &mut ChaCha8Rng, count: usize) -> FamilyReport {
    let mut rep = FamilyReport::new("trace");
    for _ in 0..count {
        let (p, q) = loop {
            let (p, q) = (rng.random_range(0..=3usize), rng.random_range(0..=3usize));
            if p + q > 0 {
                break (p, q);
            }
        };
        let sig = AlgebraSignature::new(p, q);
        let len = rng.random_range(0..=8usize);
        let word: Vec<Generator> = (0..len).map(|_| random_generator(rng, &sig)).collect();
        let symbolic = trace(&CliffordElement::from_raw(&word), &sig);
        let matrix = match MatrixRep::new(sig) {
            Ok(m) => m,
            Err(e) => {
                rep.record(false, f64::INFINITY, || format!("p={p} q={q}: {e}"));
                continue;
            }
        };
        let numeric = matrix.normalized_trace(&matrix.word(&word));
        let ok = symbolic == ScalarPoly::constant(numeric.clone());
        rep.record(ok, if ok { 0.0 } else { 1.0 }, || format!("p={p} q={q} word {word:?}: symbolic {symbolic:?}, matrix {numeric:?}"));
    }
    rep
}

fn random_gaussian(rng: &mut ChaCha8Rng) -> ScalarPoly {
    ScalarPoly::constant(GaussianRational::new(
        wres_core::symbolic::qi(rng.random_range(-4..=4)),
        wres_core::symbolic::qi(rng.random_range(-4..=4)),
    ))
}

/// Random proper rational functions `N(ξ)/((ξ−i)^a (ξ+i)^b)` with degree
/// gap at least two.
pub fn quadrature_family(rng: &mut ChaCha8Rng, count: usize) -> FamilyReport {
    let mut rep = FamilyReport::new("quadrature");
    for _ in 0..count {
        let a = rng.random_range(0..=3u32);
        let b = rng.random_range(0..=3u32);
        let (a, b) = if a + b < 2 { (a + 1, b + 1) } else { (a, b) };
        let max_deg = (a + b - 2) as usize;
        let deg = rng.random_range(0..=max_deg);
        let num: Vec<ScalarPoly> = (0..=deg).map(|_| random_gaussian(rng)).collect();
        let f = RationalXi::new(num, a, b);
        let exact = match f.integrate_line_over_pi().map(|p| p.as_constant()) {
            Ok(Some(c)) => c.to_f64_pair(),
            other => {
                rep.record(false, f64::INFINITY, || format!("{f:?}: {other:?}"));
                continue;
            }
        };
        let exact = (exact.0 * std::f64::consts::PI, exact.1 * std::f64::consts::PI);
        let zero = |_: &wres_core::symbolic::Symbol| (0.0, 0.0);
        let numeric = match quad::integrate_real_line_complex(|x| f.eval_f64((x, 0.0), &zero), 1e-12) {
            Ok(r) => r.value,
            Err(e) => {
                rep.record(false, f64::INFINITY, || format!("{f:?}: {e}"));
                continue;
            }
        };
        let scale = exact.0.hypot(exact.1).max(1.0);
        let dev = (numeric.0 - exact.0).hypot(numeric.1 - exact.1) / scale;
        rep.record(dev < 1e-8, dev, || format!("{f:?}: exact {exact:?}, quadrature {numeric:?}"));
    }
    rep
}

/// Random warp expressions at random points of `[0.1, 0.9]`, compared on a
/// scale `max(1, |f|, |f⁽ᵏ⁾|)`.
pub fn derivative_family(rng: &mut ChaCha8Rng, count: usize) -> FamilyReport {
    let mut rep = FamilyReport::new("derivatives");
    for _ in 0..count {
        let e = random_expr(rng, 3);
        let t = rng.random_range(0.1..0.9);
        let outcome = e.jet(t).and_then(|j| Ok((j, finite_differences(&|s| e.eval(s), t, 1e-3)?)));
        match outcome {
            Ok((jet, fd)) => {
                let mut dev: f64 = 0.0;
                for k in 0..3 {
                    let scale = jet.0[k + 1].abs().max(jet.0[0].abs()).max(1.0);
                    dev = dev.max((jet.0[k + 1] - fd[k]).abs() / scale);
                }
                rep.record(dev < 1e-6, dev, || format!("{e} at t={t}: jet {:?}, differences {fd:?}", jet.0));
            }
            Err(err) => rep.record(false, f64::INFINITY, || format!("{e} at t={t}: {err}")),
        }
    }
    rep
}

/// Runs every family with `count` samples each from one seed.
pub fn run_all(seed: u64, count: usize) -> [FamilyReport; 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = trace_family(&mut rng, count);
    let q = quadrature_family(&mut rng, count);
    let d = derivative_family(&mut rng, count);
    [t, q, d]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_run_passes() {
        for f in run_all(1, 0) {
            assert!(f.pass());
            assert_eq!(f.count, 0);
        }
    }

    #[test]
    fn small_run_passes() {
        for f in run_all(7, 30) {
            assert!(f.pass(), "{}: {:?}", f.name, f.failures);
        }
    }
}
