//! Index cases of the boundary term `Φ`, their exact evaluation, the scenario
//! registry and the partial residue functionals.

use crate::clifford::{trace_via_matrix, AlgebraSignature, MatrixRep, TraceDim};
use crate::error::{Result, WresError};
use crate::symbolic::{q, sphere_average, GaussianRational, Quantity, ScalarPoly, Symbol, Unit, Q};
use crate::symbols::{derive, pi_plus, symbol, BoundaryModel, Derivative, Operator, SymbolExpr, SymbolJet};

pub mod scenarios;

pub use scenarios::{registered, scenario, Expected, Scenario};

/// One term of the boundary sum: symbol orders `r`, `ℓ`, derivative counts
/// `k`, `j` and the tangential multi-index order `|α|`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CaseIndex {
    pub r: i32,
    pub l: i32,
    pub k: u32,
    pub j: u32,
    pub alpha: u32,
}

/// Which lowered-order case carries the label `b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum BSide {
    /// `b` lowers the order of the left symbol (`r = −p₁ − 1`).
    Left,
    /// `b` lowers the order of the right symbol (`ℓ = −p₂ − 1`).
    Right,
}

impl CaseIndex {
    /// Conventional label (`aI`, `aII`, `aIII`, `b`, `c`, or `a` for a lone
    /// minimal case); other shapes get a descriptive label.
    pub fn name(&self, p1: usize, p2: usize, b_side: BSide) -> String {
        let (r0, l0) = (-(p1 as i32), -(p2 as i32));
        let s = self.k + self.j + self.alpha;
        if self.r == r0 && self.l == l0 {
            match (s, self.alpha, self.j, self.k) {
                (0, ..) => return "a".into(),
                (1, 1, _, _) => return "aI".into(),
                (1, _, 1, _) => return "aII".into(),
                (1, _, _, 1) => return "aIII".into(),
                _ => {}
            }
        }
        if s == 0 {
            let left_lowered = self.r == r0 - 1 && self.l == l0;
            let right_lowered = self.r == r0 && self.l == l0 - 1;
            match (left_lowered, right_lowered, b_side) {
                (true, _, BSide::Left) | (_, true, BSide::Right) => return "b".into(),
                (true, _, BSide::Right) | (_, true, BSide::Left) => return "c".into(),
                _ => {}
            }
        }
        format!("r={},l={},k={},j={},|alpha|={}", self.r, self.l, self.k, self.j, self.alpha)
    }

    /// `(−i)^{|α|+j+k+1} / (α!(j+k+1)!)`, with `α! = 1` for `|α| ≤ 1`.
    pub fn weight(&self) -> GaussianRational {
        let mut fact = 1i64;
        for m in 2..=(self.j + self.k + 1) as i64 {
            fact *= m;
        }
        for m in 2..=self.alpha as i64 {
            fact *= m;
        }
        GaussianRational::minus_i_pow((self.alpha + self.j + self.k + 1) as i64).scale(&q(1, fact))
    }
}

/// All cases with `r − k − |α| + ℓ − j − 1 = −n`, `r ≤ −p₁`, `ℓ ≤ −p₂`.
pub fn enumerate_cases(n: usize, p1: usize, p2: usize) -> Vec<CaseIndex> {
    let n = n as i32;
    let (r0, l0) = (-(p1 as i32), -(p2 as i32));
    let mut out = Vec::new();
    let mut r = r0;
    while r + l0 >= 1 - n {
        let mut l = l0;
        while r + l >= 1 - n {
            let s = (n - 1 + r + l) as u32;
            for alpha in (0..=s).rev() {
                for j in (0..=s - alpha).rev() {
                    let k = s - alpha - j;
                    out.push(CaseIndex { r, l, k, j, alpha });
                }
            }
            l -= 1;
        }
        r -= 1;
    }
    out.sort_by_key(|c| {
        let s = c.k + c.j + c.alpha;
        (std::cmp::Reverse(s), std::cmp::Reverse(c.alpha), std::cmp::Reverse(c.j), c.r, std::cmp::Reverse(c.l))
    });
    out
}

/// Sign and scale conventions applied to each case value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Weighting {
    /// Multiply by `(−i)^{|α|+j+k+1}/(α!(j+k+1)!)`.
    General,
    /// Report the bare cosphere/line integral of the trace.
    Unweighted,
}

/// How traces are taken.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TracePath {
    Symbolic,
    Matrix,
}

/// Evaluation conventions of a scenario.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct EvalConfig {
    pub weighting: Weighting,
    /// Index `k` of the `Ω_k` unit labelling the cosphere measure.
    pub cosphere: u8,
    pub b_side: BSide,
    pub trace_path: TracePath,
    /// Replace `dx'` by `Vol_∂M`.
    pub integrate_boundary: bool,
}

impl EvalConfig {
    pub fn for_model(m: &BoundaryModel) -> Self {
        Self {
            weighting: Weighting::General,
            cosphere: (m.n - 2) as u8,
            b_side: BSide::Left,
            trace_path: TracePath::Symbolic,
            integrate_boundary: false,
        }
    }
}

fn pi_plus_jet(j: &SymbolJet) -> Result<SymbolJet> {
    Ok(SymbolJet { value: pi_plus(&j.value)?, dxn: j.dxn.as_ref().map(pi_plus).transpose()? })
}

fn tangential_derivative(m: &BoundaryModel, j: &SymbolJet, alpha: u32) -> Result<SymbolJet> {
    match alpha {
        0 => Ok(j.clone()),
        1 => {
            let mut value = SymbolExpr::zero();
            for (e, _) in m.tangential() {
                value = &value + &derive(j, Derivative::Tangential(e), 1)?.value;
            }
            Ok(SymbolJet { value, dxn: None })
        }
        _ => Err(WresError::SymbolOrderUnavailable(format!("tangential derivative of order {alpha}"))),
    }
}

/// The exact `ξ_n`-integrand of a case after the trace, before integration.
pub fn case_integrand(m: &BoundaryModel, case: &CaseIndex, ops: (Operator, Operator), path: TracePath) -> Result<crate::symbolic::RationalXi> {
    let left = pi_plus_jet(&symbol(m, ops.0, case.r)?)?;
    let left = derive(&left, Derivative::Xn, case.j)?;
    let left = tangential_derivative(m, &left, case.alpha)?;
    let left = derive(&left, Derivative::Xi, case.k)?.value;
    let right = symbol(m, ops.1, case.l)?;
    let right = derive(&right, Derivative::Xn, case.k)?;
    let right = tangential_derivative(m, &right, case.alpha)?;
    let right = derive(&right, Derivative::Xi, case.j + 1)?.value;
    let prod = &left * &right;
    Ok(match path {
        TracePath::Symbolic => prod.trace(&m.trace_dim),
        TracePath::Matrix => trace_via_matrix(&prod, &MatrixRep::new(m.sig)?, &m.trace_dim),
    })
}

/// Exact value of one case.
pub fn eval_case(m: &BoundaryModel, case: &CaseIndex, ops: (Operator, Operator), cfg: &EvalConfig) -> Result<Quantity> {
    let f = case_integrand(m, case, ops, cfg.trace_path)?;
    let over_pi = f.integrate_line_over_pi()?;
    let reduced = crate::symbols::normal_coordinate_reduce(m, &m.constraint().reduce(&over_pi));
    let averaged = sphere_average(&reduced, &m.sphere_vars());
    let weighted = match cfg.weighting {
        Weighting::General => averaged.scale(&case.weight()),
        Weighting::Unweighted => averaged,
    };
    let measure = if cfg.integrate_boundary { Unit::VolBoundary } else { Unit::Dx };
    let value = &(&Quantity::from_poly(&weighted) * &Quantity::pi()) * &Quantity::omega(cfg.cosphere);
    Ok(&value * &Quantity::unit(measure))
}

/// One evaluated case.
#[derive(Clone, Debug, PartialEq)]
pub struct CaseResult {
    pub index: CaseIndex,
    pub name: String,
    pub value: Quantity,
}

/// Every case of `Φ` with the exact total.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryReport {
    pub n: usize,
    pub powers: (usize, usize),
    pub cases: Vec<CaseResult>,
    pub total: Quantity,
}

impl BoundaryReport {
    pub fn case(&self, name: &str) -> Option<&Quantity> {
        self.cases.iter().find(|c| c.name == name).map(|c| &c.value)
    }
}

/// Sums all cases for `(D_F^{-p₁}, D_F^{-p₂})`.
pub fn phi_total(m: &BoundaryModel, powers: (usize, usize), cfg: &EvalConfig) -> Result<BoundaryReport> {
    let ops = (Operator::from_power(powers.0)?, Operator::from_power(powers.1)?);
    let mut cases = Vec::new();
    let mut total = Quantity::zero();
    for idx in enumerate_cases(m.n, powers.0, powers.1) {
        let value = eval_case(m, &idx, ops, cfg)?;
        total = &total + &value;
        cases.push(CaseResult { index: idx, name: idx.name(powers.0, powers.1, cfg.b_side), value });
    }
    Ok(BoundaryReport { n: m.n, powers, cases, total })
}

/// The partial residue functionals.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ResKind {
    Res11,
    Res21,
    Res22,
    Res23,
    Res21Dim5,
    Res22Dim5,
}

impl ResKind {
    pub fn all() -> [ResKind; 6] {
        [ResKind::Res11, ResKind::Res21, ResKind::Res22, ResKind::Res23, ResKind::Res21Dim5, ResKind::Res22Dim5]
    }

    pub fn name(&self) -> &'static str {
        match self {
            ResKind::Res11 => "res11",
            ResKind::Res21 => "res21",
            ResKind::Res22 => "res22",
            ResKind::Res23 => "res23",
            ResKind::Res21Dim5 => "res21_51",
            ResKind::Res22Dim5 => "res22_51",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        ResKind::all().into_iter().find(|k| k.name() == s).ok_or_else(|| WresError::UnknownKind(s.to_string()))
    }

    /// Model, operator pair and case realizing the functional.
    fn setup(&self) -> Result<(BoundaryModel, (Operator, Operator), CaseIndex)> {
        use Operator::*;
        let dim4 = || BoundaryModel::new(AlgebraSignature::new(2, 2));
        let dim6 = || Ok::<_, WresError>(BoundaryModel::new(AlgebraSignature::new(2, 4))?.with_trace_dim(TraceDim::Symbolic));
        let dim5 = || BoundaryModel::new(AlgebraSignature::new(5, 0));
        let c = |r, l, k, j| CaseIndex { r, l, k, j, alpha: 0 };
        Ok(match self {
            ResKind::Res11 => (dim4()?, (Dinv, Dinv), c(-1, -1, 0, 1)),
            ResKind::Res21 => (dim4()?, (Dinv, Dinv), c(-2, -1, 0, 0)),
            ResKind::Res22 => (dim6()?, (Dsq, Dsq), c(-2, -2, 0, 1)),
            ResKind::Res23 => (dim6()?, (Dsq, Dsq), c(-2, -3, 0, 0)),
            ResKind::Res21Dim5 => (dim5()?, (Dsq, Dinv), c(-2, -1, 0, 1)),
            ResKind::Res22Dim5 => (dim5()?, (Dsq, Dinv), c(-2, -2, 0, 0)),
        })
    }

    /// The closed form the functional is expected to take, in units of `I_{Gr,b}`.
    pub fn expected(&self) -> Quantity {
        let i = Quantity::unit(Unit::IGrb);
        let d = Quantity::unit(Unit::Sym(Symbol::TotalDim));
        let o3 = Quantity::omega(3);
        let o4 = Quantity::omega(4);
        let pi = Quantity::pi();
        match self {
            ResKind::Res11 => (&(&pi * &o3) * &i).scale_q(&q(1, 4)),
            ResKind::Res21 => (&(&pi * &o3) * &i).scale_q(&q(-1, 4)),
            ResKind::Res22 => (&(&d * &o4) * &i).scale_q(&q(1, 64)),
            ResKind::Res23 => (&(&d * &o4) * &i).scale_q(&q(3, 64)),
            ResKind::Res21Dim5 | ResKind::Res22Dim5 => Quantity::zero(),
        }
    }
}

/// A partial residue evaluated pointwise and integrated over a flat boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct ResPartial {
    pub kind: ResKind,
    /// Pointwise value in units of `dx'`.
    pub local: Quantity,
    /// `∫_∂M` of the local value with `h'(0)Vol_∂M` rewritten through
    /// `I_{Gr,b} = −(n−1)h'(0)Vol_∂M`.
    pub integrated: Quantity,
    pub expected: Quantity,
}

impl ResPartial {
    pub fn pass(&self) -> bool {
        self.integrated == self.expected
    }
}

/// `I_{Gr,b} = 2∫_∂M K` with `K = −(n−1)h'(0)/2` in the collar model.
pub fn einstein_hilbert_boundary(n: usize) -> Quantity {
    let hv = &Quantity::unit(Unit::Sym(Symbol::HPrime)) * &Quantity::unit(Unit::VolBoundary);
    hv.scale_q(&Q::from_integer((-(n as i64 - 1)).into()))
}

/// Evaluates one partial residue functional.
pub fn res_partial(kind: ResKind) -> Result<ResPartial> {
    let (m, ops, case) = kind.setup()?;
    let mut cfg = EvalConfig::for_model(&m);
    if m.n == 4 {
        cfg.cosphere = 3;
    }
    let local = eval_case(&m, &case, ops, &cfg)?;
    let integrated = local.substitute(&Unit::Dx, &Quantity::unit(Unit::VolBoundary)).expect("integer exponent");
    let per_igrb = Quantity::unit(Unit::IGrb).scale_q(&q(-1, m.n as i64 - 1));
    let integrated = integrated
        .substitute(&Unit::Sym(Symbol::HPrime), &per_igrb)
        .and_then(|x| x.substitute(&Unit::VolBoundary, &Quantity::one()))
        .expect("integer exponents");
    Ok(ResPartial { kind, local, integrated, expected: kind.expected() })
}

/// Whether a polynomial quantity vanishes when `h'(0) = 0`.
pub fn vanishes_without_hprime(x: &Quantity) -> bool {
    x.substitute(&Unit::Sym(Symbol::HPrime), &Quantity::zero()).is_some_and(|v| v.is_zero())
}

/// Convenience: the polynomial `h'(0)`.
pub fn hprime() -> ScalarPoly {
    ScalarPoly::var(Symbol::HPrime)
}
