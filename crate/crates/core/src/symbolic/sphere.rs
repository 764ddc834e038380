//! Exact monomial moments over the unit sphere `S^{m−1} ⊂ ℝ^m`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::gauss::Q;
use super::poly::{Monomial, ScalarPoly, Symbol};
use super::units::Quantity;

/// `∫_{S^{m−1}} x^α dσ / Ω_{m−1}` via the Gamma product formula:
/// `Π (α_i − 1)!! / Π_{k < |α|/2} (m + 2k)` when every `α_i` is even, else `0`.
pub fn moment_ratio(exponents: &[u32], m: u32) -> Q {
    assert!(m >= 1, "ambient dimension must be positive");
    assert!(exponents.len() <= m as usize, "more exponents than coordinates");
    if exponents.iter().any(|e| e % 2 == 1) {
        return Q::zero();
    }
    let mut num = BigInt::one();
    for &e in exponents {
        let mut k = e as i64 - 1;
        while k > 1 {
            num *= k;
            k -= 2;
        }
    }
    let half: u32 = exponents.iter().sum::<u32>() / 2;
    let mut den = BigInt::one();
    for k in 0..half {
        den *= BigInt::from(m + 2 * k);
    }
    Q::new(num, den)
}

/// `∫_{S^{m−1}} x^α dσ` as a rational multiple of `Ω_{m−1}`.
pub fn sphere_moment(exponents: &[u32], m: u32) -> Quantity {
    Quantity::omega((m - 1) as u8).scale_q(&moment_ratio(exponents, m))
}

/// Integrates a polynomial over the sphere in the variables `vars`
/// (`vars.len()` must equal the ambient dimension `m`), returning the
/// normalized average: the result multiplies `Ω_{m−1}`.
pub fn sphere_average(p: &ScalarPoly, vars: &[Symbol]) -> ScalarPoly {
    let m = vars.len() as u32;
    let mut out = ScalarPoly::zero();
    for (mono, c) in p.terms() {
        let exps: Vec<u32> = vars.iter().map(|v| mono.degree_in(v)).collect();
        let ratio = moment_ratio(&exps, m);
        if ratio.is_zero() {
            continue;
        }
        let (_, rest) = mono.partition(|s| vars.contains(s));
        out.add_assign_ref(&ScalarPoly::term(c.scale(&ratio), Monomial::from_pairs(rest.factors().to_vec())));
    }
    out
}
