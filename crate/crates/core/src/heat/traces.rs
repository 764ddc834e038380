//! Symbolic derivation of the endomorphism `E` of the Lichnerowicz formula,
//! the bundle curvature `Ω_ij`, their traces, and the interior heat
//! coefficient sets that follow from them.

use num_traits::Zero;

use crate::clifford::{c, c_hat, AlgebraSignature, CliffordElement, TraceDim};
use crate::symbolic::{q, Frame, GaussianRational, Monomial, ScalarPoly, Symbol, Q};

/// `⟨R^{F⊥}(x, y) h_t, h_s⟩`.
pub fn curv_perp(x: Frame, y: Frame, t: u8, s: u8) -> ScalarPoly {
    ScalarPoly::signed(Symbol::curv_perp(x, y, t, s))
}

/// `R_{ijkl}`.
pub fn riem(i: Frame, j: Frame, k: Frame, l: Frame) -> ScalarPoly {
    ScalarPoly::signed(Symbol::riem(i, j, k, l))
}

fn leaf(sig: &AlgebraSignature) -> Vec<Frame> {
    (1..=sig.p as u8).map(Frame::F).collect()
}

fn trans(sig: &AlgebraSignature) -> Vec<u8> {
    (1..=sig.q as u8).collect()
}

fn frames(sig: &AlgebraSignature) -> Vec<Frame> {
    let mut v = leaf(sig);
    v.extend(trans(sig).into_iter().map(Frame::H));
    v
}

fn hat_pair(s: u8, t: u8) -> CliffordElement {
    &c_hat(s) * &c_hat(t)
}

/// The three curvature terms `I₁, I₂, I₃` of the Lichnerowicz formula.
pub fn lichnerowicz_terms(sig: &AlgebraSignature) -> [CliffordElement; 3] {
    let mut i1 = CliffordElement::zero();
    let mut i2 = CliffordElement::zero();
    let mut i3 = CliffordElement::zero();
    let fs = leaf(sig);
    let hs = trans(sig);
    for &s in &hs {
        for &t in &hs {
            let hh = hat_pair(s, t);
            for &fi in &fs {
                for &r in &hs {
                    let k = curv_perp(fi, Frame::H(r), t, s);
                    if !k.is_zero() {
                        i1 = &i1 + &(&(&c(fi) * &c(Frame::H(r))) * &hh).scale(&k.scale_q(&q(1, 4)));
                    }
                }
                for &fj in &fs {
                    let k = curv_perp(fi, fj, t, s);
                    if !k.is_zero() {
                        i2 = &i2 + &(&(&c(fi) * &c(fj)) * &hh).scale(&k.scale_q(&q(1, 8)));
                    }
                }
            }
            for &r in &hs {
                for &l in &hs {
                    let k = curv_perp(Frame::H(r), Frame::H(l), t, s);
                    if !k.is_zero() {
                        i3 = &i3 + &(&(&c(Frame::H(r)) * &c(Frame::H(l))) * &hh).scale(&k.scale_q(&q(1, 8)));
                    }
                }
            }
        }
    }
    [i1, i2, i3]
}

/// `E = −(r_M/4 + I₁ + I₂ + I₃)`.
pub fn lichnerowicz_e(sig: &AlgebraSignature) -> CliffordElement {
    let [i1, i2, i3] = lichnerowicz_terms(sig);
    let r4 = CliffordElement::scalar(ScalarPoly::var(Symbol::ScalarCurv).scale_q(&q(1, 4)));
    -&(&(&(&r4 + &i1) + &i2) + &i3)
}

/// `‖R^{F⊥}‖² = 2Σ⟨R(f_i,h_r)h_t,h_s⟩² + Σ⟨R(f_i,f_j)h_t,h_s⟩² + Σ⟨R(h_r,h_l)h_t,h_s⟩²`.
pub fn perp_norm_sq(sig: &AlgebraSignature) -> ScalarPoly {
    let mut out = ScalarPoly::zero();
    let fs = leaf(sig);
    let hs = trans(sig);
    for &s in &hs {
        for &t in &hs {
            for &fi in &fs {
                for &r in &hs {
                    out = &out + &curv_perp(fi, Frame::H(r), t, s).pow(2).scale_q(&q(2, 1));
                }
                for &fj in &fs {
                    out = &out + &curv_perp(fi, fj, t, s).pow(2);
                }
            }
            for &r in &hs {
                for &l in &hs {
                    out = &out + &curv_perp(Frame::H(r), Frame::H(l), t, s).pow(2);
                }
            }
        }
    }
    out
}

/// `Σ_{ijkl} R_{ijkl}²` over the full frame.
pub fn riem_norm_sq(sig: &AlgebraSignature) -> ScalarPoly {
    let fr = frames(sig);
    let mut out = ScalarPoly::zero();
    for &i in &fr {
        for &j in &fr {
            for &k in &fr {
                for &l in &fr {
                    out = &out + &riem(i, j, k, l).pow(2);
                }
            }
        }
    }
    out
}

/// `Ω_ij = −¼ R_{ijkl} c(e_k)c(e_l) − ¼ ⟨R^{F⊥}(e_i,e_j)h_s,h_t⟩ ĉ(h_s)ĉ(h_t)`, with
/// the second tensor factor realized by the `ĉ` generators.
pub fn curvature_omega(sig: &AlgebraSignature, ei: Frame, ej: Frame) -> CliffordElement {
    let fr = frames(sig);
    let mut out = CliffordElement::zero();
    for &k in &fr {
        for &l in &fr {
            let co = riem(ei, ej, k, l);
            if !co.is_zero() {
                out = &out + &(&c(k) * &c(l)).scale(&co.scale_q(&q(-1, 4)));
            }
        }
    }
    for &s in &trans(sig) {
        for &t in &trans(sig) {
            let co = curv_perp(ei, ej, s, t);
            if !co.is_zero() {
                out = &out + &hat_pair(s, t).scale(&co.scale_q(&q(-1, 4)));
            }
        }
    }
    out
}

/// Traces derived from the Clifford model next to their closed forms, all
/// with the fibre dimension kept as the symbol `l̃·2^q`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceIdentities {
    pub tr_e: ScalarPoly,
    pub tr_e_sq: ScalarPoly,
    pub tr_omega_sq: ScalarPoly,
    pub closed_tr_e: ScalarPoly,
    pub closed_tr_e_sq: ScalarPoly,
    pub closed_tr_omega_sq: ScalarPoly,
}

impl TraceIdentities {
    pub fn all_hold(&self) -> bool {
        self.tr_e == self.closed_tr_e && self.tr_e_sq == self.closed_tr_e_sq && self.tr_omega_sq == self.closed_tr_omega_sq
    }
}

fn dim_poly() -> ScalarPoly {
    TraceDim::Symbolic.as_poly()
}

/// `tr E`, `tr E²` and `Σ_ij tr Ω_ij Ω_ij` for a signature.
pub fn trace_identities(sig: &AlgebraSignature) -> TraceIdentities {
    let d = TraceDim::Symbolic;
    let e = lichnerowicz_e(sig);
    let tr_e = e.trace(&d);
    let tr_e_sq = (&e * &e).trace(&d);
    let mut tr_omega_sq = ScalarPoly::zero();
    for &i in &frames(sig) {
        for &j in &frames(sig) {
            let o = curvature_omega(sig, i, j);
            tr_omega_sq = &tr_omega_sq + &(&o * &o).trace(&d);
        }
    }
    let r = ScalarPoly::var(Symbol::ScalarCurv);
    let dp = dim_poly();
    TraceIdentities {
        tr_e,
        tr_e_sq,
        tr_omega_sq,
        closed_tr_e: (&dp * &r).scale_q(&q(-1, 4)),
        closed_tr_e_sq: (&dp * &(&r.pow(2) + &perp_norm_sq(sig))).scale_q(&q(1, 16)),
        closed_tr_omega_sq: (&dp * &(&riem_norm_sq(sig) + &perp_norm_sq(sig))).scale_q(&q(-1, 8)),
    }
}

/// Interior coefficient sets per unit fibre dimension: `a₀ ∝ 1`,
/// `a₂ ∝ c·r_M`, `a₄ ∝ (c₁r² + c₂Ric² + c₃|R|² + c₄‖R^{F⊥}‖²)/360`.
#[derive(Clone, Debug, PartialEq)]
pub struct InteriorCoefficientSets {
    pub a0: Q,
    pub a2_r: Q,
    pub a4_r_sq: Q,
    pub a4_ric_sq: Q,
    pub a4_riem_sq: Q,
    /// Undetermined when the signature has no normal-bundle curvature.
    pub a4_perp_sq: Option<Q>,
}

fn coefficient_of(p: &ScalarPoly, m: &Monomial) -> GaussianRational {
    p.terms().find(|(mm, _)| *mm == m).map(|(_, c)| c.clone()).unwrap_or_else(GaussianRational::zero)
}

fn real(c: GaussianRational) -> Option<Q> {
    c.is_real().then_some(c.re)
}

/// Derives the interior coefficient sets from the general heat formulas
/// `a₂ ∝ tr(τ + 6E)/6` and
/// `360 a₄ ∝ tr(5τ² − 2|Ric|² + 2|R|² + 60τE + 180E² + 30Ω_ijΩ_ij)` (closed manifold).
/// Returns `None` when the result is not a combination of the four invariants.
pub fn derive_interior_coefficients(sig: &AlgebraSignature) -> Option<InteriorCoefficientSets> {
    let t = trace_identities(sig);
    let dp = dim_poly();
    let r = ScalarPoly::var(Symbol::ScalarCurv);
    let a2 = (&(&dp * &r) + &t.tr_e.scale_q(&q(6, 1))).scale_q(&q(1, 6));
    let a2_r = real(coefficient_of(&a2, &Monomial::from_pairs(vec![(Symbol::ScalarCurv, 1), (Symbol::TotalDim, 1)])))?;
    if a2 != (&dp * &r).scale_q(&a2_r) {
        return None;
    }
    let ric = ScalarPoly::var(Symbol::RicSq);
    let riem_sq = riem_norm_sq(sig);
    let perp_sq = perp_norm_sq(sig);
    let mut a4 = (&dp * &(&(&r.pow(2).scale_q(&q(5, 1)) - &ric.scale_q(&q(2, 1))) + &riem_sq.scale_q(&q(2, 1)))).clone();
    a4 = &a4 + &(&r * &t.tr_e).scale_q(&q(60, 1));
    a4 = &a4 + &t.tr_e_sq.scale_q(&q(180, 1));
    a4 = &a4 + &t.tr_omega_sq.scale_q(&q(30, 1));
    let with_d = |p: &ScalarPoly| &dp * p;
    let pick = |basis: &ScalarPoly| -> Option<Q> {
        let b = with_d(basis);
        let (m, cb) = b.terms().next()?;
        real(coefficient_of(&a4, m) / cb.clone())
    };
    let c1 = pick(&r.pow(2))?;
    let c2 = pick(&ric)?;
    let c3 = pick(&riem_sq)?;
    let c4 = if perp_sq.is_zero() { None } else { Some(pick(&perp_sq)?) };
    let mut rebuilt = &(&r.pow(2).scale_q(&c1) + &ric.scale_q(&c2)) + &riem_sq.scale_q(&c3);
    if let Some(c4) = &c4 {
        rebuilt = &rebuilt + &perp_sq.scale_q(c4);
    }
    if with_d(&rebuilt) != a4 {
        return None;
    }
    Some(InteriorCoefficientSets { a0: q(1, 1), a2_r, a4_r_sq: c1, a4_ric_sq: c2, a4_riem_sq: c3, a4_perp_sq: c4 })
}
