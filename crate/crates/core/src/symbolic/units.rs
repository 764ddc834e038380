//! Exact values carried as Gaussian-rational coefficients times products of
//! opaque units (π, sphere volumes, `h'(0)`, boundary volume, radicals, ...).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gauss::{fmt_q, GaussianRational, Q};
use super::poly::{ScalarPoly, Symbol};
use crate::error::{Result, WresError};

/// Rational exponent of a unit.
pub type Exp = Ratio<i64>;

/// An opaque multiplicative unit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Unit {
    Pi,
    /// A prime (or integer) base carried with a fractional exponent, e.g. `2^(1/2)`.
    Radical(u64),
    /// A formal scalar symbol such as `h'(0)` or `l̃·2^q`.
    Sym(Symbol),
    /// Volume of the unit `k`-sphere.
    Omega(u8),
    /// `Vol_∂M`.
    VolBoundary,
    /// The boundary measure `dx'`.
    Dx,
    /// The Einstein–Hilbert boundary action `I_{Gr,b}`.
    IGrb,
    /// `∫_M r_M dvol`.
    IntScalarCurv,
    /// `Vol_M`.
    VolInterior,
}

impl Unit {
    pub fn name(&self) -> String {
        match self {
            Unit::Pi => "pi".into(),
            Unit::Radical(p) => format!("{p}"),
            Unit::Sym(s) => s.name(),
            Unit::Omega(k) => format!("Omega{k}"),
            Unit::VolBoundary => "Vol_dM".into(),
            Unit::Dx => "dx'".into(),
            Unit::IGrb => "I_Gr,b".into(),
            Unit::IntScalarCurv => "int_r_M".into(),
            Unit::VolInterior => "Vol_M".into(),
        }
    }

    /// Numeric value where the unit is a transcendental constant.
    pub fn numeric(&self) -> Option<f64> {
        match self {
            Unit::Pi => Some(std::f64::consts::PI),
            Unit::Radical(p) => Some(*p as f64),
            Unit::Omega(k) => Some(sphere_volume_f64(*k as u32)),
            _ => None,
        }
    }
}

/// `Ω_k = 2π^{(k+1)/2} / Γ((k+1)/2)`.
pub fn sphere_volume_f64(k: u32) -> f64 {
    let m = (k + 1) as f64;
    2.0 * std::f64::consts::PI.powf(m / 2.0) / gamma_half_integer(k + 1)
}

/// `Γ(m/2)` for a positive integer `m`.
pub fn gamma_half_integer(m: u32) -> f64 {
    assert!(m > 0);
    let mut x = m as f64 / 2.0;
    let mut acc = 1.0;
    while x > 1.0 {
        x -= 1.0;
        acc *= x;
    }
    if (x - 0.5).abs() < 1e-12 {
        acc * std::f64::consts::PI.sqrt()
    } else {
        acc
    }
}

/// A product of units with rational exponents (zero exponents absent).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct UnitMonomial(BTreeMap<Unit, Exp>);

impl UnitMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn unit(u: Unit) -> Self {
        Self::pow(u, Exp::one())
    }

    pub fn pow(u: Unit, e: Exp) -> Self {
        let mut m = BTreeMap::new();
        if !e.is_zero() {
            m.insert(u, e);
        }
        UnitMonomial(m)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (&Unit, &Exp)> {
        self.0.iter()
    }

    pub fn exponent(&self, u: &Unit) -> Exp {
        self.0.get(u).cloned().unwrap_or_else(Exp::zero)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul_raw(&self, o: &UnitMonomial) -> UnitMonomial {
        let mut m = self.0.clone();
        for (u, e) in &o.0 {
            let v = m.get(u).cloned().unwrap_or_else(Exp::zero) + e;
            if v.is_zero() {
                m.remove(u);
            } else {
                m.insert(*u, v);
            }
        }
        UnitMonomial(m)
    }

    fn powi(&self, k: Exp) -> UnitMonomial {
        UnitMonomial(self.0.iter().map(|(u, e)| (*u, e * k)).filter(|(_, e)| !e.is_zero()).collect())
    }

    /// Each unit rendered as `name` or `name^exp`.
    pub fn labels(&self) -> Vec<String> {
        self.0
            .iter()
            .map(|(u, e)| {
                if e.is_one() {
                    u.name()
                } else if e.is_integer() && e.is_positive() {
                    format!("{}^{}", u.name(), e.numer())
                } else if e.is_integer() {
                    format!("{}^({})", u.name(), e.numer())
                } else {
                    format!("{}^({}/{})", u.name(), e.numer(), e.denom())
                }
            })
            .collect()
    }
}

/// Moves integer parts of radical exponents into the coefficient.
fn normalize(coef: GaussianRational, unit: UnitMonomial) -> (GaussianRational, UnitMonomial) {
    let mut coef = coef;
    let mut out = BTreeMap::new();
    for (u, e) in unit.0 {
        if let Unit::Radical(p) = u {
            let fl = e.floor().to_integer();
            let rest = e - Exp::from_integer(fl);
            let base = Q::from_integer(BigInt::from(p));
            let factor = if fl >= 0 {
                num_traits::pow(base, fl as usize)
            } else {
                num_traits::pow(base.recip(), (-fl) as usize)
            };
            coef = coef.scale(&factor);
            if !rest.is_zero() {
                out.insert(u, rest);
            }
        } else if !e.is_zero() {
            out.insert(u, e);
        }
    }
    (coef, UnitMonomial(out))
}

/// A single exact term `coefficient · unit`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UnitValue {
    pub coefficient: GaussianRational,
    pub unit: UnitMonomial,
}

impl UnitValue {
    pub fn new(coefficient: GaussianRational, unit: UnitMonomial) -> Self {
        let (coefficient, unit) = normalize(coefficient, unit);
        Self { coefficient, unit }
    }

    /// Addition is defined only for identical units (or when one side is zero).
    pub fn try_add(&self, o: &UnitValue) -> Result<UnitValue> {
        if self.coefficient.is_zero() {
            return Ok(o.clone());
        }
        if o.coefficient.is_zero() {
            return Ok(self.clone());
        }
        if self.unit != o.unit {
            return Err(WresError::InvalidInput(format!(
                "cannot add values with units {:?} and {:?}",
                self.unit.labels(),
                o.unit.labels()
            )));
        }
        Ok(UnitValue { coefficient: &self.coefficient + &o.coefficient, unit: self.unit.clone() })
    }
}

impl fmt::Display for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coefficient)?;
        for l in self.unit.labels() {
            write!(f, "*{l}")?;
        }
        Ok(())
    }
}

/// An exact sum of unit terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Quantity {
    terms: BTreeMap<UnitMonomial, GaussianRational>,
}

impl Quantity {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, UnitMonomial::one())
    }

    pub fn rational(c: Q) -> Self {
        Self::constant(GaussianRational::real(c))
    }

    pub fn unit(u: Unit) -> Self {
        Self::term(GaussianRational::one(), UnitMonomial::unit(u))
    }

    pub fn unit_pow(u: Unit, e: Exp) -> Self {
        Self::term(GaussianRational::one(), UnitMonomial::pow(u, e))
    }

    pub fn pi() -> Self {
        Self::unit(Unit::Pi)
    }

    /// Volume of the unit `k`-sphere; `Ω₀ = 2` and `Ω₁ = 2π` are expanded.
    pub fn omega(k: u8) -> Self {
        match k {
            0 => Self::constant(GaussianRational::from_int(2)),
            1 => Self::pi().scale(&GaussianRational::from_int(2)),
            _ => Self::unit(Unit::Omega(k)),
        }
    }

    pub fn term(c: GaussianRational, unit: UnitMonomial) -> Self {
        let mut q = Self::default();
        q.add_term(c, unit);
        q
    }

    pub fn from_value(v: &UnitValue) -> Self {
        Self::term(v.coefficient.clone(), v.unit.clone())
    }

    /// Embeds a polynomial: each symbol becomes a `Sym` unit.
    pub fn from_poly(p: &ScalarPoly) -> Self {
        let mut out = Self::default();
        for (m, c) in p.terms() {
            let mut um = UnitMonomial::one();
            for (s, e) in m.factors() {
                um = um.mul_raw(&UnitMonomial::pow(Unit::Sym(*s), Exp::from_integer(*e as i64)));
            }
            out.add_term(c.clone(), um);
        }
        out
    }

    fn add_term(&mut self, c: GaussianRational, unit: UnitMonomial) {
        let (c, unit) = normalize(c, unit);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(unit.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&unit);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UnitMonomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn values(&self) -> Vec<UnitValue> {
        self.terms.iter().map(|(u, c)| UnitValue { coefficient: c.clone(), unit: u.clone() }).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single term, if the quantity has exactly one (zero has none).
    pub fn as_unit_value(&self) -> Option<UnitValue> {
        if self.terms.len() == 1 {
            self.values().pop()
        } else {
            None
        }
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        let mut out = Self::default();
        for (u, c) in &self.terms {
            out.add_term(c * s, u.clone());
        }
        out
    }

    pub fn scale_q(&self, s: &Q) -> Self {
        self.scale(&GaussianRational::real(s.clone()))
    }

    /// Raises to a rational power; only single-term quantities with a positive
    /// rational coefficient whose power is representable are supported.
    pub fn powr(&self, e: Exp) -> Option<Self> {
        let v = self.as_unit_value()?;
        if !v.coefficient.is_real() || !v.coefficient.re.is_positive() {
            return None;
        }
        let (coef, radicals) = rational_power(&v.coefficient.re, e)?;
        let unit = v.unit.powi(e).mul_raw(&radicals);
        Some(Self::term(GaussianRational::real(coef), unit))
    }

    /// Replaces a unit by a quantity (integer exponents only).
    pub fn substitute(&self, u: &Unit, value: &Quantity) -> Option<Self> {
        let mut out = Self::default();
        for (m, c) in &self.terms {
            let e = m.exponent(u);
            if e.is_zero() {
                out.add_term(c.clone(), m.clone());
                continue;
            }
            if !e.is_integer() {
                return None;
            }
            let mut rest = m.clone();
            rest.0.remove(u);
            let k = e.to_integer();
            let factor = if k >= 0 {
                (0..k).fold(Quantity::one(), |acc, _| &acc * value)
            } else {
                let inv = value.inverse()?;
                (0..-k).fold(Quantity::one(), |acc, _| &acc * &inv)
            };
            out = &out + &(&Quantity::term(c.clone(), rest) * &factor);
        }
        Some(out)
    }

    /// Inverse of a single nonzero term.
    pub fn inverse(&self) -> Option<Self> {
        let v = self.as_unit_value()?;
        Some(Self::term(v.coefficient.inv()?, v.unit.powi(-Exp::one())))
    }

    /// Floating evaluation when every unit is a numeric constant.
    pub fn to_f64(&self) -> Option<(f64, f64)> {
        let (mut re, mut im) = (0.0, 0.0);
        for (m, c) in &self.terms {
            let mut f = 1.0;
            for (u, e) in m.exponents() {
                f *= u.numeric()?.powf(*e.numer() as f64 / *e.denom() as f64);
            }
            let (cr, ci) = c.to_f64_pair();
            re += cr * f;
            im += ci * f;
        }
        Some((re, im))
    }
}

/// `x^e` for a positive rational, as rational coefficient times prime radicals.
fn rational_power(x: &Q, e: Exp) -> Option<(Q, UnitMonomial)> {
    let mut unit = UnitMonomial::one();
    for (p, k) in factorize(x.numer())? {
        unit = unit.mul_raw(&UnitMonomial::pow(Unit::Radical(p), e * Exp::from_integer(k)));
    }
    for (p, k) in factorize(x.denom())? {
        unit = unit.mul_raw(&UnitMonomial::pow(Unit::Radical(p), -e * Exp::from_integer(k)));
    }
    let (c, u) = normalize(GaussianRational::one(), unit);
    Some((c.re, u))
}

/// Trial-division factorization for moderately sized integers.
fn factorize(n: &BigInt) -> Option<Vec<(u64, i64)>> {
    let mut n = n.to_u64()?;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        let mut k = 0;
        while n % p == 0 {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    Some(out)
}

impl<'a> Add<&'a Quantity> for &'a Quantity {
    type Output = Quantity;
    fn add(self, o: &Quantity) -> Quantity {
        let mut out = self.clone();
        for (u, c) in &o.terms {
            out.add_term(c.clone(), u.clone());
        }
        out
    }
}

impl Add for Quantity {
    type Output = Quantity;
    fn add(self, o: Quantity) -> Quantity {
        &self + &o
    }
}

impl<'a> Sub<&'a Quantity> for &'a Quantity {
    type Output = Quantity;
    fn sub(self, o: &Quantity) -> Quantity {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Quantity> for &'a Quantity {
    type Output = Quantity;
    fn mul(self, o: &Quantity) -> Quantity {
        let mut out = Quantity::default();
        for (u1, c1) in &self.terms {
            for (u2, c2) in &o.terms {
                out.add_term(c1 * c2, u1.mul_raw(u2));
            }
        }
        out
    }
}

impl Mul for Quantity {
    type Output = Quantity;
    fn mul(self, o: Quantity) -> Quantity {
        &self * &o
    }
}

impl Neg for &Quantity {
    type Output = Quantity;
    fn neg(self) -> Quantity {
        self.scale(&-GaussianRational::one())
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.values().iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Renders an exponent the same way as unit labels do.
pub fn fmt_exp(e: &Exp) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

/// Renders a rational coefficient.
pub fn fmt_coef(c: &Q) -> String {
    fmt_q(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::gauss::q;

    #[test]
    fn radicals_canonicalize() {
        // (√2)² = 2
        let r = Quantity::unit_pow(Unit::Radical(2), Exp::new(1, 2));
        assert_eq!(&r * &r, Quantity::constant(GaussianRational::from_int(2)));
        // 8^{1/2} = 2·√2
        let e = Quantity::rational(q(8, 1)).powr(Exp::new(1, 2)).unwrap();
        assert_eq!(e, (&Quantity::rational(q(2, 1)) * &r));
    }

    #[test]
    fn unit_value_addition_requires_same_unit() {
        let a = UnitValue::new(GaussianRational::one(), UnitMonomial::unit(Unit::Pi));
        let b = UnitValue::new(GaussianRational::one(), UnitMonomial::unit(Unit::Omega(3)));
        assert!(a.try_add(&b).is_err());
        assert_eq!(a.try_add(&a).unwrap().coefficient, GaussianRational::from_int(2));
    }

    #[test]
    fn numeric_sphere_volumes() {
        assert!((sphere_volume_f64(2) - 4.0 * std::f64::consts::PI).abs() < 1e-12);
        assert!((sphere_volume_f64(3) - 2.0 * std::f64::consts::PI.powi(2)).abs() < 1e-12);
        assert!((sphere_volume_f64(4) - 8.0 * std::f64::consts::PI.powi(2) / 3.0).abs() < 1e-12);
    }

    #[test]
    fn labels() {
        let m = UnitMonomial::pow(Unit::Pi, Exp::new(-3, 2)).mul_raw(&UnitMonomial::unit(Unit::Omega(3)));
        assert_eq!(m.labels(), vec!["pi^(-3/2)".to_string(), "Omega3".to_string()]);
    }
}
