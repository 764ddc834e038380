//! Rational functions of the conormal variable `ξ_n` whose only poles sit at
//! `ξ_n = ±i`, together with the `π⁺` projection and residue-based line integrals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use super::gauss::{GaussianRational, Q};
use super::poly::ScalarPoly;
use crate::error::{Result, WresError};

/// Polynomial in `ξ_n` with `ScalarPoly` coefficients, lowest degree first.
type XPoly = Vec<ScalarPoly>;

fn trim(p: &mut XPoly) {
    while matches!(p.last(), Some(c) if c.is_zero()) {
        p.pop();
    }
}

fn xp_add(a: &XPoly, b: &XPoly) -> XPoly {
    let n = a.len().max(b.len());
    let mut out: XPoly = (0..n)
        .map(|k| match (a.get(k), b.get(k)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => ScalarPoly::zero(),
        })
        .collect();
    trim(&mut out);
    out
}

fn xp_mul(a: &XPoly, b: &XPoly) -> XPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ScalarPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j].add_assign_ref(&(x * y));
            }
        }
    }
    trim(&mut out);
    out
}

fn xp_scale(a: &XPoly, s: &ScalarPoly) -> XPoly {
    let mut out: XPoly = a.iter().map(|c| c * s).collect();
    trim(&mut out);
    out
}

/// `(ξ − r)^k` with a constant root.
fn xp_linear_pow(r: &GaussianRational, k: u32) -> XPoly {
    let lin: XPoly = vec![ScalarPoly::constant(-r), ScalarPoly::one()];
    let mut acc: XPoly = vec![ScalarPoly::one()];
    for _ in 0..k {
        acc = xp_mul(&acc, &lin);
    }
    acc
}

fn xp_eval(a: &XPoly, x: &GaussianRational) -> ScalarPoly {
    let mut acc = ScalarPoly::zero();
    for c in a.iter().rev() {
        acc = &acc.scale(x) + c;
    }
    acc
}

/// Synthetic division by `(ξ − r)`; returns the quotient, assuming zero remainder.
fn xp_div_linear(a: &XPoly, r: &GaussianRational) -> XPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let n = a.len();
    let mut q = vec![ScalarPoly::zero(); n - 1];
    let mut carry = ScalarPoly::zero();
    for k in (1..n).rev() {
        carry = &a[k] + &carry.scale(r);
        q[k - 1] = carry.clone();
    }
    trim(&mut q);
    q
}

fn xp_derivative(a: &XPoly) -> XPoly {
    let mut out: XPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale(&GaussianRational::from_int(k as i64)))
        .collect();
    trim(&mut out);
    out
}

/// Coefficients of `N(r + t)` in powers of `t`.
fn xp_shift(a: &XPoly, r: &GaussianRational) -> XPoly {
    let n = a.len();
    let mut out = vec![ScalarPoly::zero(); n];
    for (j, c) in a.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut rp = GaussianRational::one();
        for k in (0..=j).rev() {
            let bin = Q::from_integer(binomial(BigInt::from(j), BigInt::from(k)));
            out[k].add_scaled(c, &rp.scale(&bin));
            rp = &rp * r;
        }
    }
    trim(&mut out);
    out
}

/// `N(ξ) / ((ξ − i)^{m⁺} (ξ + i)^{m⁻})` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalXi {
    num: XPoly,
    m_plus: u32,
    m_minus: u32,
}

impl RationalXi {
    /// Builds and canonicalizes: common factors `(ξ ∓ i)` are cancelled.
    pub fn new(num: Vec<ScalarPoly>, m_plus: u32, m_minus: u32) -> Self {
        let mut num = num;
        trim(&mut num);
        let mut out = RationalXi { num, m_plus, m_minus };
        out.canonicalize();
        out
    }

    fn canonicalize(&mut self) {
        trim(&mut self.num);
        if self.num.is_empty() {
            self.m_plus = 0;
            self.m_minus = 0;
            return;
        }
        let i = GaussianRational::i();
        let mi = -GaussianRational::i();
        while self.m_plus > 0 && xp_eval(&self.num, &i).is_zero() {
            self.num = xp_div_linear(&self.num, &i);
            self.m_plus -= 1;
        }
        while self.m_minus > 0 && xp_eval(&self.num, &mi).is_zero() {
            self.num = xp_div_linear(&self.num, &mi);
            self.m_minus -= 1;
        }
    }

    pub fn constant(c: ScalarPoly) -> Self {
        Self::new(vec![c], 0, 0)
    }

    pub fn from_poly(coeffs: Vec<ScalarPoly>) -> Self {
        Self::new(coeffs, 0, 0)
    }

    /// The monomial `ξ_n`.
    pub fn xi() -> Self {
        Self::new(vec![ScalarPoly::zero(), ScalarPoly::one()], 0, 0)
    }

    /// `(1 + ξ_n²)^{-k}`.
    pub fn inv_one_plus_xi2(k: u32) -> Self {
        Self::new(vec![ScalarPoly::one()], k, k)
    }

    /// `(ξ_n − i)^{-a} (ξ_n + i)^{-b}`.
    pub fn inv_poles(a: u32, b: u32) -> Self {
        Self::new(vec![ScalarPoly::one()], a, b)
    }

    pub fn numerator(&self) -> &[ScalarPoly] {
        &self.num
    }

    pub fn m_plus(&self) -> u32 {
        self.m_plus
    }

    pub fn m_minus(&self) -> u32 {
        self.m_minus
    }

    /// Degree of the numerator, `-1` for zero.
    pub fn num_degree(&self) -> i64 {
        self.num.len() as i64 - 1
    }

    /// `(m⁺ + m⁻) − deg N`; `None` for the zero function.
    pub fn degree_gap(&self) -> Option<i64> {
        if self.num.is_empty() {
            None
        } else {
            Some((self.m_plus + self.m_minus) as i64 - self.num_degree())
        }
    }

    pub fn is_proper(&self) -> bool {
        self.degree_gap().is_none_or(|g| g >= 1)
    }

    pub fn scale(&self, s: &ScalarPoly) -> Self {
        Self::new(xp_scale(&self.num, s), self.m_plus, self.m_minus)
    }

    pub fn scale_gr(&self, s: &GaussianRational) -> Self {
        self.scale(&ScalarPoly::constant(s.clone()))
    }

    /// Applies `f` to every numerator coefficient and re-canonicalizes.
    pub fn map_coeffs(&self, f: impl Fn(&ScalarPoly) -> ScalarPoly) -> Self {
        Self::new(self.num.iter().map(f).collect(), self.m_plus, self.m_minus)
    }

    fn raised(&self, mp: u32, mm: u32) -> XPoly {
        let up = xp_linear_pow(&GaussianRational::i(), mp - self.m_plus);
        let um = xp_linear_pow(&-GaussianRational::i(), mm - self.m_minus);
        xp_mul(&xp_mul(&self.num, &up), &um)
    }

    /// `d/dξ_n`.
    pub fn derivative(&self) -> Self {
        if self.num.is_empty() {
            return Self::default();
        }
        // (N'·(ξ−i)(ξ+i) − m⁺N(ξ+i) − m⁻N(ξ−i)) / ((ξ−i)^{m⁺+1}(ξ+i)^{m⁻+1})
        let i = GaussianRational::i();
        let q2 = xp_mul(&xp_linear_pow(&i, 1), &xp_linear_pow(&-i.clone(), 1));
        let t1 = xp_mul(&xp_derivative(&self.num), &q2);
        let t2 = xp_scale(&xp_mul(&self.num, &xp_linear_pow(&-i.clone(), 1)), &ScalarPoly::int(-(self.m_plus as i64)));
        let t3 = xp_scale(&xp_mul(&self.num, &xp_linear_pow(&i, 1)), &ScalarPoly::int(-(self.m_minus as i64)));
        Self::new(xp_add(&xp_add(&t1, &t2), &t3), self.m_plus + 1, self.m_minus + 1)
    }

    pub fn nth_derivative(&self, k: u32) -> Self {
        (0..k).fold(self.clone(), |acc, _| acc.derivative())
    }

    /// Taylor coefficients `g_0..g_{order-1}` at `ξ = r` of `N(ξ)·(ξ + r)^{-other}`
    /// where `other` is the pole order at `−r`.
    fn local_taylor(&self, r: &GaussianRational, other: u32, order: u32) -> Vec<ScalarPoly> {
        let shifted = xp_shift(&self.num, r);
        // (t + 2r)^{-b} = (2r)^{-b} Σ_k C(-b,k) (2r)^{-k} t^k
        let two_r = r.scale(&Q::from_integer(BigInt::from(2)));
        let inv = two_r.inv().expect("root is nonzero");
        let base = inv.pow(other);
        let mut series = Vec::with_capacity(order as usize);
        let mut invk = GaussianRational::one();
        for k in 0..order {
            let c = if other == 0 {
                if k == 0 { Q::one() } else { Q::zero() }
            } else {
                let b = BigInt::from(other + k - 1);
                let v = Q::from_integer(binomial(b, BigInt::from(k)));
                if k % 2 == 1 { -v } else { v }
            };
            series.push((&base * &invk).scale(&c));
            invk = &invk * &inv;
        }
        (0..order as usize)
            .map(|k| {
                let mut acc = ScalarPoly::zero();
                for u in 0..=k {
                    if let Some(nu) = shifted.get(u) {
                        acc.add_scaled(nu, &series[k - u]);
                    }
                }
                acc
            })
            .collect()
    }

    fn principal_part_at(&self, plus: bool) -> Self {
        let (r, a, b) = if plus {
            (GaussianRational::i(), self.m_plus, self.m_minus)
        } else {
            (-GaussianRational::i(), self.m_minus, self.m_plus)
        };
        if a == 0 || self.num.is_empty() {
            return Self::default();
        }
        let g = self.local_taylor(&r, b, a);
        let mut num: XPoly = Vec::new();
        for (k, gk) in g.iter().enumerate() {
            if gk.is_zero() {
                continue;
            }
            num = xp_add(&num, &xp_scale(&xp_linear_pow(&r, k as u32), gk));
        }
        if plus {
            Self::new(num, a, 0)
        } else {
            Self::new(num, 0, a)
        }
    }

    /// The partial-fraction part with poles only at `ξ_n = +i`.
    pub fn pi_plus(&self) -> Result<Self> {
        if !self.is_proper() {
            return Err(WresError::DivergentSymbol);
        }
        Ok(self.principal_part_at(true))
    }

    /// The partial-fraction part with poles only at `ξ_n = −i`.
    pub fn pi_minus(&self) -> Result<Self> {
        if !self.is_proper() {
            return Err(WresError::DivergentSymbol);
        }
        Ok(self.principal_part_at(false))
    }

    /// Residue at `ξ_n = +i`.
    pub fn residue_plus(&self) -> ScalarPoly {
        if self.m_plus == 0 || self.num.is_empty() {
            return ScalarPoly::zero();
        }
        let g = self.local_taylor(&GaussianRational::i(), self.m_minus, self.m_plus);
        g[self.m_plus as usize - 1].clone()
    }

    /// `∫_ℝ f dξ_n / π`, i.e. `2i·Res_{+i} f`, for absolutely integrable `f`.
    pub fn integrate_line_over_pi(&self) -> Result<ScalarPoly> {
        match self.degree_gap() {
            None => Ok(ScalarPoly::zero()),
            Some(g) if g < 1 => Err(WresError::DivergentSymbol),
            Some(g) if g < 2 => Err(WresError::ConditionallyConvergent { gap: g }),
            Some(_) => Ok(self.residue_plus().scale(&GaussianRational::new(Q::zero(), Q::from_integer(BigInt::from(2))))),
        }
    }

    /// Floating-point evaluation at a complex point.
    pub fn eval_f64(&self, xi: (f64, f64), sym: &dyn Fn(&super::poly::Symbol) -> (f64, f64)) -> (f64, f64) {
        let cm = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
        let mut acc = (0.0, 0.0);
        for c in self.num.iter().rev() {
            let v = c.eval_f64(sym);
            let m = cm(acc, xi);
            acc = (m.0 + v.0, m.1 + v.1);
        }
        let mut den = (1.0, 0.0);
        for _ in 0..self.m_plus {
            den = cm(den, (xi.0, xi.1 - 1.0));
        }
        for _ in 0..self.m_minus {
            den = cm(den, (xi.0, xi.1 + 1.0));
        }
        let d2 = den.0 * den.0 + den.1 * den.1;
        ((acc.0 * den.0 + acc.1 * den.1) / d2, (acc.1 * den.0 - acc.0 * den.1) / d2)
    }

    /// Exact evaluation at a Gaussian-rational point away from `±i`.
    pub fn eval_exact(&self, xi: &GaussianRational) -> Option<ScalarPoly> {
        let i = GaussianRational::i();
        let dp = (xi - &i).pow(self.m_plus);
        let dm = (xi + &i).pow(self.m_minus);
        let den = (&dp * &dm).inv()?;
        Some(xp_eval(&self.num, xi).scale(&den))
    }
}

impl Zero for RationalXi {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
}

impl One for RationalXi {
    fn one() -> Self {
        Self::constant(ScalarPoly::one())
    }
}

impl<'a> Add<&'a RationalXi> for &'a RationalXi {
    type Output = RationalXi;
    fn add(self, o: &RationalXi) -> RationalXi {
        if self.num.is_empty() {
            return o.clone();
        }
        if o.num.is_empty() {
            return self.clone();
        }
        let mp = self.m_plus.max(o.m_plus);
        let mm = self.m_minus.max(o.m_minus);
        RationalXi::new(xp_add(&self.raised(mp, mm), &o.raised(mp, mm)), mp, mm)
    }
}

impl Add for RationalXi {
    type Output = RationalXi;
    fn add(self, o: RationalXi) -> RationalXi {
        &self + &o
    }
}

impl<'a> Sub<&'a RationalXi> for &'a RationalXi {
    type Output = RationalXi;
    fn sub(self, o: &RationalXi) -> RationalXi {
        self + &(-o)
    }
}

impl Sub for RationalXi {
    type Output = RationalXi;
    fn sub(self, o: RationalXi) -> RationalXi {
        &self - &o
    }
}

impl<'a> Mul<&'a RationalXi> for &'a RationalXi {
    type Output = RationalXi;
    fn mul(self, o: &RationalXi) -> RationalXi {
        RationalXi::new(xp_mul(&self.num, &o.num), self.m_plus + o.m_plus, self.m_minus + o.m_minus)
    }
}

impl Mul for RationalXi {
    type Output = RationalXi;
    fn mul(self, o: RationalXi) -> RationalXi {
        &self * &o
    }
}

impl Neg for &RationalXi {
    type Output = RationalXi;
    fn neg(self) -> RationalXi {
        RationalXi { num: self.num.iter().map(|c| -c).collect(), m_plus: self.m_plus, m_minus: self.m_minus }
    }
}

impl Neg for RationalXi {
    type Output = RationalXi;
    fn neg(self) -> RationalXi {
        -&self
    }
}

impl fmt::Display for RationalXi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*xi"),
                _ => format!("({c})*xi^{k}"),
            })
            .collect();
        write!(f, "[{}] / ((xi-i)^{} (xi+i)^{})", parts.join(" + "), self.m_plus, self.m_minus)
    }
}

impl fmt::Debug for RationalXi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
