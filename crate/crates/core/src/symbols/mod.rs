//! Symbols of `D_F^{-1}` and `D_F^{-2}` at a boundary point `x₀` of the collar
//! metric `g = g^{∂M}/h(x_n) + dx_n²` with `h(0) = 1`, evaluated on `|ξ'| = 1`.

use num_traits::{One, Zero};

use crate::clifford::{c, c_hat, AlgebraSignature, CliffordElement, Multivector, TraceDim};
use crate::error::{Result, WresError};
use crate::symbolic::{q, Frame, GaussianRational, QuadraticConstraint, RationalXi, ScalarPoly, Symbol, Q};

/// Clifford-valued rational function of `ξ_n`.
pub type SymbolExpr = Multivector<RationalXi>;

/// Geometry of the boundary model.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryModel {
    pub n: usize,
    pub sig: AlgebraSignature,
    /// `Γ^n(x₀) = gamma_n · h'(0)`.
    pub gamma_n: Q,
    pub trace_dim: TraceDim,
}

impl BoundaryModel {
    /// Model for `n = p + q` with `Γ^n = (5/2)h'(0)` and the concrete trace
    /// dimension `l̃·2^q`.
    pub fn new(sig: AlgebraSignature) -> Result<Self> {
        let n = sig.n();
        if n < 2 {
            return Err(WresError::InvalidInput(format!("dimension {n} too small for a boundary model")));
        }
        Ok(Self { n, sig, gamma_n: q(5, 2), trace_dim: sig.trace_dim() })
    }

    pub fn with_gamma_n(mut self, g: Q) -> Self {
        self.gamma_n = g;
        self
    }

    pub fn with_trace_dim(mut self, d: TraceDim) -> Self {
        self.trace_dim = d;
        self
    }

    pub fn leaf_frames(&self) -> Vec<Frame> {
        (1..=self.sig.p as u8).map(Frame::F).collect()
    }

    pub fn transversal_frames(&self) -> Vec<Frame> {
        (1..=self.sig.q as u8).map(Frame::H).collect()
    }

    pub fn frames(&self) -> Vec<Frame> {
        let mut v = self.leaf_frames();
        v.extend(self.transversal_frames());
        v
    }

    /// `dx_n = h_q*`, or `f_p*` when there is no transversal direction.
    pub fn normal(&self) -> Frame {
        if self.sig.q > 0 {
            Frame::H(self.sig.q as u8)
        } else {
            Frame::F(self.sig.p as u8)
        }
    }

    /// Tangential frame vectors paired with the component of `ξ'` along them.
    pub fn tangential(&self) -> Vec<(Frame, Symbol)> {
        let nrm = self.normal();
        self.frames()
            .into_iter()
            .filter(|e| *e != nrm)
            .map(|e| match e {
                Frame::F(j) => (e, Symbol::A(j)),
                Frame::H(u) => (e, Symbol::B(u)),
            })
            .collect()
    }

    pub fn sphere_vars(&self) -> Vec<Symbol> {
        self.tangential().into_iter().map(|(_, s)| s).collect()
    }

    /// `Σ a_j² + Σ b_u² = 1`.
    pub fn constraint(&self) -> QuadraticConstraint {
        QuadraticConstraint::new(&self.sphere_vars())
    }

    /// `c(ξ') = Σ a_j c(f_j) + Σ b_u c(h_u)`.
    pub fn c_xi_prime(&self) -> CliffordElement {
        let mut out = CliffordElement::zero();
        for (e, s) in self.tangential() {
            out = &out + &c(e).scale(&ScalarPoly::var(s));
        }
        out
    }

    /// `c(dx_n)`.
    pub fn c_normal(&self) -> CliffordElement {
        c(self.normal())
    }

    fn hp() -> ScalarPoly {
        ScalarPoly::var(Symbol::HPrime)
    }
}

/// `ω_{k,l}(X) = ⟨∇_X e_l, e_k⟩`.
fn omega(k: Frame, l: Frame, x: Frame) -> ScalarPoly {
    ScalarPoly::conn(x, l, k)
}

fn gr(n: i64, d: i64) -> ScalarPoly {
    ScalarPoly::rational(q(n, d))
}

/// `ĉ(h_r)ĉ(h_t) − c(h_r)c(h_t)`.
fn exterior_pair(r: u8, t: u8) -> CliffordElement {
    &(&c_hat(r) * &c_hat(t)) - &(&c(Frame::H(r)) * &c(Frame::H(t)))
}

/// The zeroth-order symbol `p₀ = σ₀(D_F)` with symbolic connection data.
pub fn sigma0_df(m: &BoundaryModel) -> CliffordElement {
    let fs = m.leaf_frames();
    let hs = m.transversal_frames();
    let hidx = |e: Frame| match e {
        Frame::H(s) => s,
        Frame::F(_) => unreachable!(),
    };
    let mut out = CliffordElement::zero();
    let mut add = |coef: ScalarPoly, x: CliffordElement| {
        if !coef.is_zero() {
            out = &out + &x.scale(&coef);
        }
    };
    for &fi in &fs {
        for &fk in &fs {
            for &fl in &fs {
                add(&omega(fk, fl, fi) * &gr(-1, 4), &(&c(fi) * &c(fk)) * &c(fl));
            }
        }
    }
    for &hs_ in &hs {
        for &fk in &fs {
            for &fl in &fs {
                add(&omega(fk, fl, hs_) * &gr(-1, 4), &(&c(fk) * &c(fl)) * &c(hs_));
            }
        }
    }
    for &fi in &fs {
        for &hr in &hs {
            for &ht in &hs {
                add(&omega(hr, ht, fi) * &gr(1, 4), &c(fi) * &exterior_pair(hidx(hr), hidx(ht)));
            }
        }
    }
    for &hs_ in &hs {
        for &hr in &hs {
            for &ht in &hs {
                add(&omega(hr, ht, hs_) * &gr(1, 4), &c(hs_) * &exterior_pair(hidx(hr), hidx(ht)));
            }
        }
    }
    for &fi in &fs {
        for &fj in &fs {
            for &hs_ in &hs {
                add(&ScalarPoly::conn(fi, fj, hs_) * &gr(1, 2), &(&c(fi) * &c(fj)) * &c(hs_));
            }
        }
    }
    for &hs_ in &hs {
        for &ht in &hs {
            for &fi in &fs {
                add(&ScalarPoly::conn(hs_, ht, fi) * &gr(1, 2), &(&c(hs_) * &c(ht)) * &c(fi));
            }
        }
    }
    out
}

/// Connection endomorphism `δ(X)` of `S(F) ⊗ Λ(F^⊥*)` along `X`.
pub fn connection_form(m: &BoundaryModel, x: Frame) -> CliffordElement {
    let mut out = CliffordElement::zero();
    for &fk in &m.leaf_frames() {
        for &fl in &m.leaf_frames() {
            out = &out + &(&c(fk) * &c(fl)).scale(&(&omega(fk, fl, x) * &gr(1, 4)));
        }
    }
    for &hr in &m.transversal_frames() {
        for &ht in &m.transversal_frames() {
            let (Frame::H(r), Frame::H(t)) = (hr, ht) else { unreachable!() };
            out = &out - &exterior_pair(r, t).scale(&(&omega(hr, ht, x) * &gr(1, 4)));
        }
    }
    out
}

/// Eliminates connection data with the normal-coordinate identity
/// `Σ_e ⟨∇_e e, z⟩(x₀) = 0` for every frame vector `z`.
pub fn normal_coordinate_reduce(m: &BoundaryModel, x: &ScalarPoly) -> ScalarPoly {
    let frames = m.frames();
    let mut out = x.clone();
    for &z in &frames {
        let Some(&e0) = frames.iter().find(|e| **e != z) else { continue };
        let Some((s0, pivot)) = Symbol::conn(e0, e0, z) else { continue };
        if !out.contains(&pivot) {
            continue;
        }
        let mut rest = ScalarPoly::zero();
        for &e in frames.iter().filter(|e| **e != e0) {
            rest = &rest + &ScalarPoly::conn(e, e, z);
        }
        let value = rest.scale(&GaussianRational::from_int(-s0));
        out = out.substitute(&pivot, &value);
    }
    out
}

fn lift(x: &CliffordElement) -> SymbolExpr {
    SymbolExpr::lift(x)
}

fn xi_scalar(f: RationalXi) -> SymbolExpr {
    SymbolExpr::scalar(f)
}

/// `c(ξ) = c(ξ') + ξ_n c(dx_n)`.
pub fn c_xi(m: &BoundaryModel) -> SymbolExpr {
    &lift(&m.c_xi_prime()) + &lift(&m.c_normal()).scale(&RationalXi::xi())
}

fn poly_xi(coeffs: &[i64]) -> RationalXi {
    RationalXi::from_poly(coeffs.iter().map(|c| ScalarPoly::int(*c)).collect())
}

/// `σ_{-1}(D_F^{-1}) = i c(ξ)/|ξ|²`.
pub fn sigma_minus1_dinv(m: &BoundaryModel) -> SymbolExpr {
    c_xi(m).scale(&RationalXi::inv_one_plus_xi2(1).scale(&ScalarPoly::i()))
}

/// `∂_{x_n} σ_{-1}(D_F^{-1})(x₀) = i h'[((ξ_n² − 1)/2) c(ξ') − ξ_n c(dx_n)] / |ξ|⁴`.
pub fn dxn_sigma_minus1_dinv(m: &BoundaryModel) -> SymbolExpr {
    let ih = &ScalarPoly::i() * &BoundaryModel::hp();
    let den = RationalXi::inv_one_plus_xi2(2).scale(&ih);
    let a = &poly_xi(&[-1, 0, 1]).scale(&gr(1, 2)) * &den;
    let b = &RationalXi::xi() * &den;
    &lift(&m.c_xi_prime()).scale(&a) - &lift(&m.c_normal()).scale(&b)
}

/// `σ_{-2}(D_F^{-1}) = c(ξ)p₀c(ξ)/|ξ|⁴ + c(ξ)c(dx_n)[∂_{x_n}c(ξ')|ξ|² − c(ξ)h'(0)]/|ξ|⁶`
/// with `∂_{x_n}c(ξ')(x₀) = (h'(0)/2)c(ξ')`.
pub fn sigma_minus2_dinv(m: &BoundaryModel) -> SymbolExpr {
    let cx = c_xi(m);
    let p0 = lift(&sigma0_df(m));
    let first = (&(&cx * &p0) * &cx).scale(&RationalXi::inv_one_plus_xi2(2));
    let hp = BoundaryModel::hp();
    let dcx = lift(&m.c_xi_prime()).scale(&RationalXi::constant(&hp * &gr(1, 2)));
    let bracket = &dcx.scale(&poly_xi(&[1, 0, 1])) - &cx.scale(&RationalXi::constant(hp));
    let second = (&(&cx * &lift(&m.c_normal())) * &bracket).scale(&RationalXi::inv_one_plus_xi2(3));
    &first + &second
}

/// `σ_{-2}(D_F^{-2}) = |ξ|^{-2}`.
pub fn sigma_minus2_dsq(_m: &BoundaryModel) -> SymbolExpr {
    xi_scalar(RationalXi::inv_one_plus_xi2(1))
}

/// `∂_{x_n} σ_{-2}(D_F^{-2})(x₀) = −h'(0)/|ξ|⁴`.
pub fn dxn_sigma_minus2_dsq(_m: &BoundaryModel) -> SymbolExpr {
    xi_scalar(RationalXi::inv_one_plus_xi2(2).scale(&-BoundaryModel::hp()))
}

/// `σ_{-3}(D_F^{-2}) = A₁ + A₂` with `A₁ = −2ih'(0)ξ_n/|ξ|⁶` and
/// `A₂ = −iξ_k(Γ^k − 2δ^k)/|ξ|⁴`.
pub fn sigma_minus3_dsq(m: &BoundaryModel) -> SymbolExpr {
    let hp = BoundaryModel::hp();
    let a1 = xi_scalar((&RationalXi::xi() * &RationalXi::inv_one_plus_xi2(3)).scale(&(&ScalarPoly::i() * &hp).scale(&GaussianRational::from_int(-2))));
    let minus_i = RationalXi::inv_one_plus_xi2(2).scale(&-ScalarPoly::i());
    let mut bracket = lift(&CliffordElement::scalar(hp.scale_q(&m.gamma_n))).scale(&RationalXi::xi());
    bracket = &bracket - &lift(&connection_form(m, m.normal())).scale(&RationalXi::xi().scale(&ScalarPoly::int(2)));
    for (e, s) in m.tangential() {
        bracket = &bracket - &lift(&connection_form(m, e)).scale(&RationalXi::constant(ScalarPoly::var(s).scale(&GaussianRational::from_int(2))));
    }
    &a1 + &bracket.scale(&minus_i)
}

/// The operator whose symbol is requested.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Operator {
    /// `D_F^{-1}`.
    Dinv,
    /// `D_F^{-2}`.
    Dsq,
}

impl Operator {
    pub fn from_power(p: usize) -> Result<Self> {
        match p {
            1 => Ok(Operator::Dinv),
            2 => Ok(Operator::Dsq),
            _ => Err(WresError::SymbolOrderUnavailable(format!("D^-{p}"))),
        }
    }

    pub fn power(&self) -> i32 {
        match self {
            Operator::Dinv => 1,
            Operator::Dsq => 2,
        }
    }
}

/// A symbol at `x₀` together with its first normal derivative, when known.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolJet {
    pub value: SymbolExpr,
    pub dxn: Option<SymbolExpr>,
}

impl SymbolJet {
    fn zero() -> Self {
        Self { value: SymbolExpr::zero(), dxn: Some(SymbolExpr::zero()) }
    }
}

/// `σ_order(op)` with its available normal derivative.
pub fn symbol(m: &BoundaryModel, op: Operator, order: i32) -> Result<SymbolJet> {
    match (op, order) {
        (Operator::Dinv, -1) => Ok(SymbolJet { value: sigma_minus1_dinv(m), dxn: Some(dxn_sigma_minus1_dinv(m)) }),
        (Operator::Dinv, -2) => Ok(SymbolJet { value: sigma_minus2_dinv(m), dxn: None }),
        (Operator::Dsq, -2) => Ok(SymbolJet { value: sigma_minus2_dsq(m), dxn: Some(dxn_sigma_minus2_dsq(m)) }),
        (Operator::Dsq, -3) => Ok(SymbolJet { value: sigma_minus3_dsq(m), dxn: None }),
        _ => Err(WresError::SymbolOrderUnavailable(format!("sigma_{order} of D^-{}", op.power()))),
    }
}

/// A derivative direction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Derivative {
    /// `∂_{ξ_n}`.
    Xi,
    /// `∂_{x_n}` at `x₀`.
    Xn,
    /// `∂_{x_k}` along a tangential frame direction at `x₀`; vanishes in
    /// boundary normal coordinates.
    Tangential(Frame),
}

fn map_expr(e: &SymbolExpr, f: impl Fn(&RationalXi) -> RationalXi) -> SymbolExpr {
    e.map_coeffs(f)
}

/// Applies a derivative `order` times.
pub fn derive(jet: &SymbolJet, which: Derivative, order: u32) -> Result<SymbolJet> {
    if order == 0 {
        return Ok(jet.clone());
    }
    match which {
        Derivative::Xi => {
            let d = |e: &SymbolExpr| map_expr(e, |f| f.nth_derivative(order));
            Ok(SymbolJet { value: d(&jet.value), dxn: jet.dxn.as_ref().map(d) })
        }
        Derivative::Xn => match (&jet.dxn, order) {
            (Some(v), 1) => Ok(SymbolJet { value: v.clone(), dxn: None }),
            _ => Err(WresError::SymbolOrderUnavailable(format!("x_n-derivative of order {order}"))),
        },
        Derivative::Tangential(_) => Ok(SymbolJet::zero()),
    }
}

/// `π⁺` applied coefficientwise.
pub fn pi_plus(e: &SymbolExpr) -> Result<SymbolExpr> {
    let mut out = SymbolExpr::zero();
    for (w, f) in e.terms() {
        out.add_term(*w, f.pi_plus()?);
    }
    Ok(out)
}

/// Every coefficient is a proper rational function.
pub fn is_proper(e: &SymbolExpr) -> bool {
    e.terms().all(|(_, f)| f.is_proper())
}

/// `σ₁(D_F) = i c(ξ)`.
pub fn sigma1_df(m: &BoundaryModel) -> SymbolExpr {
    c_xi(m).scale(&RationalXi::constant(ScalarPoly::i()))
}

/// Reduces every coefficient modulo `|ξ'|² = 1`.
pub fn reduce_on_cosphere(m: &BoundaryModel, e: &SymbolExpr) -> SymbolExpr {
    let k = m.constraint();
    e.map_coeffs(|f| f.map_coeffs(|p| k.reduce(p)))
}

/// The identity element, for composition checks.
pub fn one() -> SymbolExpr {
    SymbolExpr::scalar(RationalXi::one())
}
