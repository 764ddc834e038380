//! Heat-trace coefficients of `D_F²` on closed manifolds and with Dirichlet
//! boundary, lower-dimensional volumes, the `v_{n,k}` constants and spectral
//! moments of a cutoff.

pub mod config;
pub mod traces;

pub use config::{parse_config, HeatConfig};
pub use traces::{derive_interior_coefficients, lichnerowicz_e, trace_identities, InteriorCoefficientSets, TraceIdentities};

use num_traits::One;

use crate::clifford::{AlgebraSignature, TraceDim};
use crate::error::{Result, WresError};
use crate::quad::{self, QuadResult};
use crate::symbolic::units::gamma_half_integer;
use crate::symbolic::{q, Exp, GaussianRational, Quantity, Symbol, Unit, Q};

/// Pointwise curvature invariants. Interior fields are integrated against the
/// volume, boundary fields against the boundary volume.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct CurvatureData {
    /// `r_M`.
    pub r: Quantity,
    /// `Δr_M`; integrates to zero on a closed manifold.
    pub lap_r: Quantity,
    /// `r_M²`.
    pub r_sq: Quantity,
    /// `R_ijik R_ljlk`.
    pub ric_sq: Quantity,
    /// `R_ijkl R_ijkl`.
    pub riem_sq: Quantity,
    /// `‖R^{F⊥}‖²`.
    pub perp_sq: Quantity,
    /// `r_M` restricted to the boundary.
    pub r_boundary: Quantity,
    /// `L_aa`.
    pub l_aa: Quantity,
    /// `L_aa L_bb`.
    pub l_aa_l_bb: Quantity,
    /// `L_ab L_ab`.
    pub l_ab_l_ab: Quantity,
    /// `L_aa L_bb L_cc`.
    pub l_aa_l_bb_l_cc: Quantity,
    /// `L_ab L_ab L_cc`.
    pub l_ab_l_ab_l_cc: Quantity,
    /// `L_ab L_bc L_ac`.
    pub l_ab_l_bc_l_ac: Quantity,
    /// `R_aNaN`.
    pub r_anan: Quantity,
    /// `R_aNaN L_bb`.
    pub r_anan_l_bb: Quantity,
    /// `R_aNbN L_ab`.
    pub r_anbn_l_ab: Quantity,
    /// `R_abcb L_ac`.
    pub r_abcb_l_ac: Quantity,
    /// `L_aa;bb`.
    pub l_aa_bb: Quantity,
    /// `r_M;N`.
    pub r_n: Quantity,
}

impl CurvatureData {
    /// Names accepted by [`CurvatureData::field_mut`], in declaration order.
    pub const FIELDS: [&'static str; 19] = [
        "r", "lap_r", "r_sq", "ric_sq", "riem_sq", "perp_sq", "r_boundary", "l_aa", "l_aa_l_bb", "l_ab_l_ab", "l_aa_l_bb_l_cc",
        "l_ab_l_ab_l_cc", "l_ab_l_bc_l_ac", "r_anan", "r_anan_l_bb", "r_anbn_l_ab", "r_abcb_l_ac", "l_aa_bb", "r_n",
    ];

    pub fn field_mut(&mut self, name: &str) -> Option<&mut Quantity> {
        Some(match name {
            "r" => &mut self.r,
            "lap_r" => &mut self.lap_r,
            "r_sq" => &mut self.r_sq,
            "ric_sq" => &mut self.ric_sq,
            "riem_sq" => &mut self.riem_sq,
            "perp_sq" => &mut self.perp_sq,
            "r_boundary" => &mut self.r_boundary,
            "l_aa" => &mut self.l_aa,
            "l_aa_l_bb" => &mut self.l_aa_l_bb,
            "l_ab_l_ab" => &mut self.l_ab_l_ab,
            "l_aa_l_bb_l_cc" => &mut self.l_aa_l_bb_l_cc,
            "l_ab_l_ab_l_cc" => &mut self.l_ab_l_ab_l_cc,
            "l_ab_l_bc_l_ac" => &mut self.l_ab_l_bc_l_ac,
            "r_anan" => &mut self.r_anan,
            "r_anan_l_bb" => &mut self.r_anan_l_bb,
            "r_anbn_l_ab" => &mut self.r_anbn_l_ab,
            "r_abcb_l_ac" => &mut self.r_abcb_l_ac,
            "l_aa_bb" => &mut self.l_aa_bb,
            "r_n" => &mut self.r_n,
            _ => return None,
        })
    }

    /// Interior data given by the formal symbols `r_M` and `Ric²` and
    /// arbitrary quantities for `|R|²` and `‖R^{F⊥}‖²`.
    pub fn symbolic_interior() -> Self {
        let r = Quantity::unit(Unit::Sym(Symbol::ScalarCurv));
        Self { r_sq: &r * &r, r, ric_sq: Quantity::unit(Unit::Sym(Symbol::RicSq)), ..Default::default() }
    }
}

/// The coefficients `a₀ … a₄`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeatCoeffs {
    pub a: [Quantity; 5],
}

impl HeatCoeffs {
    pub fn get(&self, k: usize) -> &Quantity {
        &self.a[k]
    }
}

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// `(4π)^{-m/2}`.
pub fn four_pi_power(m: usize) -> Quantity {
    let two = Quantity::unit_pow(Unit::Radical(2), Exp::new(-(m as i64), 1));
    &two * &Quantity::unit_pow(Unit::Pi, Exp::new(-(m as i64), 2))
}

/// `tr(Id)` as a quantity.
pub fn fibre_dim(d: &TraceDim) -> Quantity {
    match d {
        TraceDim::Concrete(n) => Quantity::rational(qi(*n as i64)),
        TraceDim::Symbolic => Quantity::unit(Unit::Sym(Symbol::TotalDim)),
    }
}

/// `tr(Id)·(4π)^{-n/2}`, which equals `1/(2^p π^{p+q/2})` when the leaf has
/// dimension `2p`.
pub fn interior_prefactor(sig: &AlgebraSignature) -> Quantity {
    &fibre_dim(&sig.trace_dim()) * &four_pi_power(sig.n())
}

/// `1/(2^p π^{p+q/2})` written directly in terms of half the leaf dimension.
pub fn half_leaf_prefactor(p: usize, q: usize) -> Quantity {
    let two = Quantity::unit_pow(Unit::Radical(2), Exp::new(-(p as i64), 1));
    &two * &Quantity::unit_pow(Unit::Pi, -Exp::new(2 * p as i64 + q as i64, 2))
}

/// Coefficients of a closed manifold (the `Δ`-terms integrate to zero).
pub fn interior_coeffs(sig: &AlgebraSignature, data: &CurvatureData, vol: &Quantity) -> HeatCoeffs {
    let pre = interior_prefactor(sig);
    let a0 = &pre * vol;
    let a2 = &(&pre * &data.r) * vol;
    let a2 = a2.scale_q(&q(-1, 12));
    let a4 = &(&pre * &interior_a4_bracket(data)) * vol;
    HeatCoeffs { a: [a0, Quantity::zero(), a2, Quantity::zero(), a4.scale_q(&q(1, 360))] }
}

fn interior_a4_bracket(d: &CurvatureData) -> Quantity {
    let mut s = d.r_sq.scale_q(&q(5, 4));
    s = &s + &d.ric_sq.scale_q(&q(-2, 1));
    s = &s + &d.riem_sq.scale_q(&q(-7, 4));
    &s + &d.perp_sq.scale_q(&q(15, 2))
}

/// How the normal derivative of `r_M` enters the boundary part of `a₄`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum A4BoundaryForm {
    /// The reduced bracket with coefficient `−51` on `r;N`.
    Reduced,
    /// Substituting `tr E = −tr(Id) r/4` into `−120E;N − 18r;N`, giving `+12 r;N`.
    FromGeneral,
}

impl A4BoundaryForm {
    pub fn r_n_coefficient(&self) -> Q {
        match self {
            A4BoundaryForm::Reduced => q(-51, 1),
            A4BoundaryForm::FromGeneral => q(12, 1),
        }
    }
}

fn boundary_a4_bracket(d: &CurvatureData, form: A4BoundaryForm) -> Quantity {
    let terms: [(&Quantity, Q); 8] = [
        (&d.r_n, form.r_n_coefficient()),
        (&d.r_anan_l_bb, q(4, 1)),
        (&d.r_anbn_l_ab, q(-12, 1)),
        (&d.r_abcb_l_ac, q(4, 1)),
        (&d.l_aa_bb, q(24, 1)),
        (&d.l_aa_l_bb_l_cc, q(40, 21)),
        (&d.l_ab_l_ab_l_cc, q(-88, 7)),
        (&d.l_ab_l_bc_l_ac, q(320, 21)),
    ];
    let mut s = (&d.r_boundary * &d.l_aa).scale_q(&q(-10, 1));
    for (x, c) in terms {
        s = &s + &x.scale_q(&c);
    }
    s
}

/// Dirichlet coefficients in dimension `m = p + q`; `a₁`, `a₃` and the
/// boundary part of `a₂`, `a₄` are integrated against `bvol`.
pub fn boundary_coeffs(sig: &AlgebraSignature, data: &CurvatureData, vol: &Quantity, bvol: &Quantity, form: A4BoundaryForm) -> HeatCoeffs {
    let m = sig.n();
    let dim = fibre_dim(&sig.trace_dim());
    let pre = interior_prefactor(sig);
    let pre_b = &dim * &four_pi_power(m - 1);
    let a0 = &pre * vol;
    let a1 = (&pre_b * bvol).scale_q(&q(-1, 4));
    let a2 = &(&(-&(&data.r * vol)) + &(&data.l_aa * bvol).scale_q(&q(4, 1))) * &pre;
    let mut br3 = data.r_boundary.scale_q(&q(-8, 1));
    br3 = &br3 + &data.r_anan.scale_q(&q(8, 1));
    br3 = &br3 + &data.l_aa_l_bb.scale_q(&q(7, 1));
    br3 = &br3 + &data.l_ab_l_ab.scale_q(&q(-10, 1));
    let a3 = (&(&pre_b * &br3) * bvol).scale_q(&q(-1, 384));
    let a4 = &(&interior_a4_bracket(data) * vol) + &(&boundary_a4_bracket(data, form) * bvol);
    let a4 = (&pre * &a4).scale_q(&q(1, 360));
    HeatCoeffs { a: [a0, a1, a2.scale_q(&q(1, 12)), a3, a4] }
}

/// `Γ(m/2)` exactly, as a rational times `π^{1/2}` for odd `m`.
pub fn gamma_half(m: u32) -> Quantity {
    assert!(m > 0);
    if m.is_multiple_of(2) {
        let mut f = Q::one();
        for k in 1..(m / 2) as i64 {
            f *= qi(k);
        }
        return Quantity::rational(f);
    }
    // Γ(k + 1/2) = (2k)! / (4^k k!) √π
    let k = (m / 2) as i64;
    let mut f = Q::one();
    for j in 0..k {
        f *= q(2 * j + 1, 2);
    }
    Quantity::rational(f) * Quantity::unit_pow(Unit::Pi, Exp::new(1, 2))
}

/// The constant `v_{n,k}`; zero for mixed parity.
pub fn v_nk(n: usize, k: usize) -> Result<Quantity> {
    if k == 0 || k > n {
        return Err(WresError::InvalidInput(format!("v_(n,k) needs 1 <= k <= n, got n={n}, k={k}")));
    }
    if n % 2 != k % 2 {
        return Ok(Quantity::zero());
    }
    let (ni, ki) = (n as i64, k as i64);
    let ratio = Quantity::rational(q(ki, ni));
    let gn = gamma_half(n as u32 + 2).powr(Exp::new(ki, ni)).expect("positive gamma value");
    let gk = gamma_half(k as u32 + 2).inverse().expect("nonzero gamma value");
    let pow = if n.is_multiple_of(2) {
        // (2π)^{(k−n)/2}
        let e = Exp::new(ki - ni, 2);
        &Quantity::unit_pow(Unit::Radical(2), e) * &Quantity::unit_pow(Unit::Pi, e)
    } else {
        &Quantity::unit_pow(Unit::Radical(2), Exp::new((ki - ni) * (ni + 1), 2 * ni)) * &Quantity::unit_pow(Unit::Pi, Exp::new(ki - ni, 2))
    };
    Ok(&(&(&ratio * &pow) * &gn) * &gk)
}

/// A lower-dimensional volume with a flag for the parity-forced zero.
#[derive(Clone, Debug, PartialEq)]
pub struct LowerVolume {
    pub value: Quantity,
    pub parity_zero: bool,
}

/// `Vol^{(k)} = v_{n,k} a_{n−k}` on a closed manifold, `n = p + q`.
pub fn lower_volume(sig: &AlgebraSignature, k: usize, data: &CurvatureData, vol: &Quantity) -> Result<LowerVolume> {
    let n = sig.n();
    let v = v_nk(n, k)?;
    if n % 2 != k % 2 {
        return Ok(LowerVolume { value: Quantity::zero(), parity_zero: true });
    }
    let idx = n - k;
    if idx > 4 {
        return Err(WresError::SymbolOrderUnavailable(format!("heat coefficient a_{idx}")));
    }
    let a = interior_coeffs(sig, data, vol);
    Ok(LowerVolume { value: &v * a.get(idx), parity_zero: false })
}

/// `Wres(D_F^{-n+2}) = c̃₀ ∫ r_M`, with `c̃₀ = −tr(Id)/(6(n/2−2)!(4π)^{n/2})`.
pub fn wres_power(n: usize, dim: &TraceDim) -> Result<Quantity> {
    if n % 2 == 1 || n < 4 {
        return Err(WresError::InvalidInput(format!("the residue formula needs even n >= 4, got {n}")));
    }
    let mut fact = Q::one();
    for j in 1..=(n / 2 - 2) as i64 {
        fact *= qi(j);
    }
    let c0 = (&fibre_dim(dim) * &four_pi_power(n)).scale_q(&(-(Q::one() / (fact * qi(6)))));
    Ok(&c0 * &Quantity::unit(Unit::IntScalarCurv))
}

/// A nonnegative cutoff profile `F̂`.
pub enum Cutoff<'a> {
    /// Piecewise-linear interpolation of `(s, F̂(s))` samples with increasing
    /// `s` starting at `0`; zero beyond the last sample.
    Tabulated(Vec<(f64, f64)>),
    /// A closed-form profile on `[0, ∞)`.
    Function(&'a dyn Fn(f64) -> f64),
}

impl Cutoff<'_> {
    fn validate(&self) -> Result<()> {
        if let Cutoff::Tabulated(pts) = self {
            if pts.is_empty() || pts[0].0 != 0.0 {
                return Err(WresError::InvalidInput("tabulated cutoff must start at s = 0".into()));
            }
            if pts.windows(2).any(|w| w[1].0 <= w[0].0) {
                return Err(WresError::InvalidInput("tabulated cutoff abscissae must increase".into()));
            }
            if pts.iter().any(|p| !p.1.is_finite() || p.1 < 0.0) {
                return Err(WresError::InvalidInput("tabulated cutoff values must be finite and nonnegative".into()));
            }
        }
        Ok(())
    }

    pub fn eval(&self, s: f64) -> f64 {
        match self {
            Cutoff::Function(f) => f(s),
            Cutoff::Tabulated(pts) => {
                let last = pts[pts.len() - 1];
                if s > last.0 {
                    return 0.0;
                }
                let i = pts.partition_point(|p| p.0 <= s).saturating_sub(1).min(pts.len().saturating_sub(2));
                if pts.len() == 1 {
                    return pts[0].1;
                }
                let (a, b) = (pts[i], pts[i + 1]);
                a.1 + (b.1 - a.1) * (s - a.0) / (b.0 - a.0)
            }
        }
    }
}

/// `F_k = Γ(k/2)^{-1} ∫₀^∞ F̂(s) s^{k/2−1} ds` for `k = 1..4` and `F₀ = F̂(0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralMoments {
    pub f: [f64; 5],
    pub quadrature: Vec<QuadResult>,
}

/// Computes the moments with the substitution `s = u²`, which removes the
/// `s^{-1/2}` endpoint singularity of `F₁`.
pub fn spectral_moments(cutoff: &Cutoff<'_>) -> Result<SpectralMoments> {
    cutoff.validate()?;
    let tol = quad::tolerance();
    let mut f = [0.0; 5];
    f[0] = cutoff.eval(0.0);
    let mut quadrature = Vec::new();
    for k in 1..=4u32 {
        let g = |u: f64| 2.0 * cutoff.eval(u * u) * u.powi(k as i32 - 1);
        let r = match cutoff {
            Cutoff::Tabulated(pts) => quad::integrate(g, 0.0, pts[pts.len() - 1].0.sqrt(), tol)?,
            Cutoff::Function(_) => {
                let far = g(1e6) * 1e6;
                if !far.is_finite() || far.abs() > 1e-3 {
                    return Err(WresError::NonIntegrableTail(format!("F_{k}: s^(k/2) F(s) does not decay")));
                }
                quad::integrate_semi_infinite(g, 0.0, tol).map_err(|e| match e {
                    WresError::Quadrature { .. } => WresError::NonIntegrableTail(format!("F_{k}: {e}")),
                    other => other,
                })?
            }
        };
        f[k as usize] = r.value / gamma_half_integer(k);
        quadrature.push(r);
    }
    Ok(SpectralMoments { f, quadrature })
}

/// `Σ_k Λ^{4−k} F_{4−k} a_k` for numeric coefficients.
pub fn spectral_action(moments: &SpectralMoments, a: &[f64; 5], lambda: f64) -> f64 {
    (0..5).map(|k| lambda.powi(4 - k as i32) * moments.f[4 - k] * a[k]).sum()
}

/// Exact rational from a finite float (binary expansion).
pub fn q_from_f64(x: f64) -> Option<Q> {
    Q::from_float(x)
}

/// Convenience: `c · π^e`.
pub fn pi_pow(c: Q, e: Exp) -> Quantity {
    Quantity::term(GaussianRational::real(c), crate::symbolic::UnitMonomial::pow(Unit::Pi, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefactor_matches_half_leaf_form() {
        for p in 1..=3usize {
            for qq in 0..=3usize {
                let sig = AlgebraSignature::new(2 * p, qq);
                assert_eq!(interior_prefactor(&sig), half_leaf_prefactor(p, qq), "p={p} q={qq}");
            }
        }
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma_half(2), Quantity::one());
        assert_eq!(gamma_half(6), Quantity::rational(q(2, 1)));
        assert_eq!(gamma_half(3), pi_pow(q(1, 2), Exp::new(1, 2)));
        assert_eq!(gamma_half(7), pi_pow(q(15, 8), Exp::new(1, 2)));
    }

    #[test]
    fn v42_and_parity() {
        let v = v_nk(4, 2).unwrap();
        let want = &pi_pow(q(1, 2), -Exp::one()) * &Quantity::unit_pow(Unit::Radical(2), Exp::new(-1, 2));
        assert_eq!(v, want);
        assert!(v_nk(5, 2).unwrap().is_zero());
        assert!(v_nk(6, 3).unwrap().is_zero());
        assert_eq!(v_nk(4, 4).unwrap(), Quantity::one());
        assert!(v_nk(4, 0).is_err());
    }

    #[test]
    fn flat_closed_has_only_a0() {
        let sig = AlgebraSignature::new(2, 2);
        let c = interior_coeffs(&sig, &CurvatureData::default(), &Quantity::one());
        assert!(!c.a[0].is_zero());
        assert!(c.a[1..].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn zero_boundary_reduces_to_interior() {
        let sig = AlgebraSignature::new(2, 2);
        let data = CurvatureData::symbolic_interior();
        let vol = Quantity::unit(Unit::VolInterior);
        let i = interior_coeffs(&sig, &data, &vol);
        let b = boundary_coeffs(&sig, &data, &vol, &Quantity::zero(), A4BoundaryForm::Reduced);
        assert_eq!(i, b);
    }

    #[test]
    fn wres_dim4() {
        let v = wres_power(4, &TraceDim::Concrete(8)).unwrap();
        let want = &pi_pow(q(-8, 6 * 16), -Exp::new(2, 1)) * &Quantity::unit(Unit::IntScalarCurv);
        assert_eq!(v, want);
        assert!(wres_power(5, &TraceDim::Concrete(8)).is_err());
    }

    #[test]
    fn moments_of_simple_cutoffs() {
        let e = |s: f64| (-s).exp();
        let m = spectral_moments(&Cutoff::Function(&e)).unwrap();
        for k in 1..=4 {
            assert!((m.f[k] - 1.0).abs() < 1e-9, "F_{k} = {}", m.f[k]);
        }
        assert_eq!(m.f[0], 1.0);
        let ind = spectral_moments(&Cutoff::Tabulated(vec![(0.0, 1.0), (1.0, 1.0)])).unwrap();
        assert!((ind.f[4] - 0.5).abs() < 1e-12);
        assert!((ind.f[2] - 1.0).abs() < 1e-12);
        let flat = |_s: f64| 1.0;
        assert!(matches!(spectral_moments(&Cutoff::Function(&flat)), Err(WresError::NonIntegrableTail(_))));
    }
}
