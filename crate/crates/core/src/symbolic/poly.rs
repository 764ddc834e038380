//! Multivariate polynomials with Gaussian-rational coefficients over a fixed
//! table of named formal symbols.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gauss::{GaussianRational, Q};

/// A vector of the orthonormal frame `{f_1..f_p, h_1..h_q}` (indices are 1-based).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Frame {
    F(u8),
    H(u8),
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Frame::F(i) => write!(f, "f{i}"),
            Frame::H(s) => write!(f, "h{s}"),
        }
    }
}

/// Formal scalar symbols.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Symbol {
    /// `h'(0)`, the first normal derivative of the collar function.
    HPrime,
    /// Leaf component `a_j` of the unit conormal `ξ'`.
    A(u8),
    /// Transversal component `b_u` of the unit conormal `ξ'`.
    B(u8),
    /// `l̃ = dim S(F)`.
    LDim,
    /// The full fibre dimension `l̃·2^q` kept symbolic.
    TotalDim,
    /// Connection coefficient `⟨∇_{dir} e_from, e_to⟩`, stored with `from < to`.
    Conn { dir: Frame, from: Frame, to: Frame },
    /// `⟨R^{F⊥}(e_x, e_y) h_t, h_s⟩`, stored with `x < y` and `t < s`.
    CurvPerp { x: Frame, y: Frame, t: u8, s: u8 },
    /// Riemann tensor component `R_{ijkl}`, stored in canonical pair order.
    Riem { i: Frame, j: Frame, k: Frame, l: Frame },
    /// Scalar curvature `r_M`.
    ScalarCurv,
    /// Ricci contraction `R_{ijik} R_{ljlk}`.
    RicSq,
}

impl Symbol {
    /// Canonical connection coefficient with its sign, or `None` when it vanishes
    /// by antisymmetry in `(from, to)`.
    pub fn conn(dir: Frame, from: Frame, to: Frame) -> Option<(i64, Symbol)> {
        match from.cmp(&to) {
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Less => Some((1, Symbol::Conn { dir, from, to })),
            std::cmp::Ordering::Greater => Some((-1, Symbol::Conn { dir, from: to, to: from })),
        }
    }

    /// Canonical normal-bundle curvature component with its sign.
    pub fn curv_perp(x: Frame, y: Frame, t: u8, s: u8) -> Option<(i64, Symbol)> {
        if x == y || t == s {
            return None;
        }
        let mut sign = 1;
        let (x, y) = if x < y { (x, y) } else { sign = -sign; (y, x) };
        let (t, s) = if t < s { (t, s) } else { sign = -sign; (s, t) };
        Some((sign, Symbol::CurvPerp { x, y, t, s }))
    }

    /// Canonical Riemann component using both antisymmetries and pair symmetry.
    pub fn riem(i: Frame, j: Frame, k: Frame, l: Frame) -> Option<(i64, Symbol)> {
        if i == j || k == l {
            return None;
        }
        let mut sign = 1;
        let p1 = if i < j { (i, j) } else { sign = -sign; (j, i) };
        let p2 = if k < l { (k, l) } else { sign = -sign; (l, k) };
        let (p1, p2) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
        Some((sign, Symbol::Riem { i: p1.0, j: p1.1, k: p2.0, l: p2.1 }))
    }

    pub fn name(&self) -> String {
        match self {
            Symbol::HPrime => "h'(0)".into(),
            Symbol::A(j) => format!("a{j}"),
            Symbol::B(u) => format!("b{u}"),
            Symbol::LDim => "ltilde".into(),
            Symbol::TotalDim => "ltilde*2^q".into(),
            Symbol::Conn { dir, from, to } => format!("G({dir};{from},{to})"),
            Symbol::CurvPerp { x, y, t, s } => format!("Rperp({x},{y};h{t},h{s})"),
            Symbol::Riem { i, j, k, l } => format!("R({i},{j},{k},{l})"),
            Symbol::ScalarCurv => "r_M".into(),
            Symbol::RicSq => "Ric^2".into(),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A monomial: sorted list of `(symbol, exponent)` with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: Symbol) -> Self {
        Monomial(vec![(s, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(Symbol, u32)>) -> Self {
        pairs.retain(|(_, e)| *e > 0);
        pairs.sort();
        let mut out: Vec<(Symbol, u32)> = Vec::with_capacity(pairs.len());
        for (s, e) in pairs {
            match out.last_mut() {
                Some((t, f)) if *t == s => *f += e,
                _ => out.push((s, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn degree_in(&self, s: &Symbol) -> u32 {
        self.0.iter().find(|(t, _)| t == s).map(|(_, e)| *e).unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Removes `s` entirely, returning the remaining monomial and the exponent removed.
    pub fn split_off(&self, s: &Symbol) -> (Monomial, u32) {
        let e = self.degree_in(s);
        (Monomial(self.0.iter().filter(|(t, _)| t != s).cloned().collect()), e)
    }

    /// Splits the monomial into the part over symbols accepted by `keep` and the rest.
    pub fn partition(&self, keep: impl Fn(&Symbol) -> bool) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self.0.iter().cloned().partition(|(s, _)| keep(s));
        (Monomial(a), Monomial(b))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(s, e)| if *e == 1 { s.name() } else { format!("{}^{}", s.name(), e) })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Polynomial in the formal symbols with Gaussian-rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ScalarPoly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl ScalarPoly {
    pub fn constant(c: GaussianRational) -> Self {
        let mut p = Self::default();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn rational(x: Q) -> Self {
        Self::constant(GaussianRational::real(x))
    }

    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    pub fn var(s: Symbol) -> Self {
        Self::term(GaussianRational::one(), Monomial::var(s))
    }

    pub fn term(c: GaussianRational, m: Monomial) -> Self {
        let mut p = Self::default();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Signed connection coefficient `⟨∇_{dir} e_from, e_to⟩` (zero when `from == to`).
    pub fn conn(dir: Frame, from: Frame, to: Frame) -> Self {
        Self::signed(Symbol::conn(dir, from, to))
    }

    pub fn signed(x: Option<(i64, Symbol)>) -> Self {
        match x {
            None => Self::zero(),
            Some((sg, s)) => Self::var(s).scale(&GaussianRational::from_int(sg)),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, o: &ScalarPoly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, o: &ScalarPoly, s: &GaussianRational) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c * s);
        }
    }

    pub fn scale(&self, s: &GaussianRational) -> ScalarPoly {
        if s.is_zero() {
            return Self::zero();
        }
        ScalarPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn scale_q(&self, s: &Q) -> ScalarPoly {
        self.scale(&GaussianRational::real(s.clone()))
    }

    pub fn pow(&self, k: u32) -> ScalarPoly {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The constant value if the polynomial has no symbols.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn degree_in(&self, s: &Symbol) -> u32 {
        self.terms.keys().map(|m| m.degree_in(s)).max().unwrap_or(0)
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.degree_in(s) > 0
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut v: Vec<Symbol> = self.terms.keys().flat_map(|m| m.0.iter().map(|(s, _)| *s)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Substitutes `s ↦ value` everywhere.
    pub fn substitute(&self, s: &Symbol, value: &ScalarPoly) -> ScalarPoly {
        let max = self.degree_in(s);
        if max == 0 {
            return self.clone();
        }
        let mut powers = vec![ScalarPoly::one()];
        for k in 1..=max as usize {
            let next = &powers[k - 1] * value;
            powers.push(next);
        }
        let mut out = ScalarPoly::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(s);
            let t = ScalarPoly::term(c.clone(), rest);
            if e == 0 {
                out.add_assign_ref(&t);
            } else {
                out.add_assign_ref(&(&t * &powers[e as usize]));
            }
        }
        out
    }

    /// Applies `f` to every symbol simultaneously.
    pub fn substitute_all(&self, f: &dyn Fn(&Symbol) -> Option<ScalarPoly>) -> ScalarPoly {
        let mut out = ScalarPoly::zero();
        for (m, c) in &self.terms {
            let mut t = ScalarPoly::constant(c.clone());
            for (s, e) in m.factors() {
                let v = f(s).unwrap_or_else(|| ScalarPoly::var(*s));
                t = &t * &v.pow(*e);
            }
            out.add_assign_ref(&t);
        }
        out
    }

    /// Partial derivative in `s`.
    pub fn derivative(&self, s: &Symbol) -> ScalarPoly {
        let mut out = ScalarPoly::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(s);
            if e == 0 {
                continue;
            }
            let mono = rest.mul(&Monomial::from_pairs(vec![(*s, e - 1)]));
            out.add_term(mono, c * &GaussianRational::from_int(e as i64));
        }
        out
    }

    /// Exact evaluation under an assignment of every symbol.
    pub fn eval(&self, f: &dyn Fn(&Symbol) -> GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (s, e) in m.factors() {
                t = &t * &f(s).pow(*e);
            }
            acc += &t;
        }
        acc
    }

    /// Floating evaluation under an assignment of every symbol.
    pub fn eval_f64(&self, f: &dyn Fn(&Symbol) -> (f64, f64)) -> (f64, f64) {
        let (mut re, mut im) = (0.0, 0.0);
        for (m, c) in &self.terms {
            let (mut tr, mut ti) = c.to_f64_pair();
            for (s, e) in m.factors() {
                let (vr, vi) = f(s);
                for _ in 0..*e {
                    let nr = tr * vr - ti * vi;
                    ti = tr * vi + ti * vr;
                    tr = nr;
                }
            }
            re += tr;
            im += ti;
        }
        (re, im)
    }

    /// Collects the polynomial as a polynomial in `s` with coefficients free of `s`.
    pub fn coefficients_in(&self, s: &Symbol) -> BTreeMap<u32, ScalarPoly> {
        let mut out: BTreeMap<u32, ScalarPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(s);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Keeps only the terms whose monomial satisfies `pred`.
    pub fn filter(&self, pred: impl Fn(&Monomial) -> bool) -> ScalarPoly {
        ScalarPoly { terms: self.terms.iter().filter(|(m, _)| pred(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }
}

impl Zero for ScalarPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ScalarPoly {
    fn one() -> Self {
        Self::int(1)
    }
}

impl<'a> Add<&'a ScalarPoly> for &'a ScalarPoly {
    type Output = ScalarPoly;
    fn add(self, o: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        out.add_assign_ref(o);
        out
    }
}

impl Add for ScalarPoly {
    type Output = ScalarPoly;
    fn add(mut self, o: ScalarPoly) -> ScalarPoly {
        self.add_assign_ref(&o);
        self
    }
}

impl<'a> Sub<&'a ScalarPoly> for &'a ScalarPoly {
    type Output = ScalarPoly;
    fn sub(self, o: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        out.add_scaled(o, &-GaussianRational::one());
        out
    }
}

impl Sub for ScalarPoly {
    type Output = ScalarPoly;
    fn sub(self, o: ScalarPoly) -> ScalarPoly {
        &self - &o
    }
}

impl<'a> Mul<&'a ScalarPoly> for &'a ScalarPoly {
    type Output = ScalarPoly;
    fn mul(self, o: &ScalarPoly) -> ScalarPoly {
        let mut out = ScalarPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for ScalarPoly {
    type Output = ScalarPoly;
    fn mul(self, o: ScalarPoly) -> ScalarPoly {
        &self * &o
    }
}

impl Neg for ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        self.scale(&-GaussianRational::one())
    }
}

impl Neg for &ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        self.scale(&-GaussianRational::one())
    }
}

impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| if m.is_one() { c.to_string() } else { format!("{c}*{m}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The unit-sphere constraint `Σ v_k² = 1`, applied by eliminating `pivot²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticConstraint {
    pivot: Symbol,
    others: Vec<Symbol>,
}

impl QuadraticConstraint {
    /// `vars` must be nonempty; the first entry becomes the pivot.
    pub fn new(vars: &[Symbol]) -> Self {
        assert!(!vars.is_empty(), "constraint needs at least one variable");
        Self { pivot: vars[0], others: vars[1..].to_vec() }
    }

    pub fn pivot(&self) -> Symbol {
        self.pivot
    }

    pub fn variables(&self) -> Vec<Symbol> {
        let mut v = vec![self.pivot];
        v.extend(self.others.iter().cloned());
        v
    }

    /// `1 − Σ_{others} v²`, the value substituted for `pivot²`.
    pub fn pivot_square(&self) -> ScalarPoly {
        let mut p = ScalarPoly::one();
        for s in &self.others {
            p = &p - &ScalarPoly::var(*s).pow(2);
        }
        p
    }

    /// Canonical remainder: every pivot exponent reduced to at most one.
    pub fn reduce(&self, x: &ScalarPoly) -> ScalarPoly {
        if x.degree_in(&self.pivot) < 2 {
            return x.clone();
        }
        let sq = self.pivot_square();
        let mut cache: Vec<ScalarPoly> = vec![ScalarPoly::one()];
        let mut out = ScalarPoly::zero();
        for (m, c) in x.terms() {
            let (rest, e) = m.split_off(&self.pivot);
            let k = (e / 2) as usize;
            while cache.len() <= k {
                let next = &cache[cache.len() - 1] * &sq;
                cache.push(next);
            }
            let mono = rest.mul(&Monomial::from_pairs(vec![(self.pivot, e % 2)]));
            let t = ScalarPoly::term(c.clone(), mono);
            if k == 0 {
                out.add_assign_ref(&t);
            } else {
                out.add_assign_ref(&(&t * &cache[k]));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::gauss::q;

    fn a(j: u8) -> ScalarPoly {
        ScalarPoly::var(Symbol::A(j))
    }

    fn b(u: u8) -> ScalarPoly {
        ScalarPoly::var(Symbol::B(u))
    }

    #[test]
    fn constraint_itself_reduces_to_zero() {
        let c = QuadraticConstraint::new(&[Symbol::A(1), Symbol::A(2), Symbol::B(1)]);
        let s = &(&a(1).pow(2) + &a(2).pow(2)) + &b(1).pow(2);
        assert!(c.reduce(&(&s - &ScalarPoly::one())).is_zero());
        let s4 = s.pow(2);
        assert_eq!(c.reduce(&s4), ScalarPoly::one());
    }

    #[test]
    fn derivative_and_substitution() {
        let p = &a(1).pow(3) + &a(1).scale(&GaussianRational::from_int(2));
        assert_eq!(p.derivative(&Symbol::A(1)), &a(1).pow(2).scale(&GaussianRational::from_int(3)) + &ScalarPoly::int(2));
        let sub = p.substitute(&Symbol::A(1), &ScalarPoly::rational(q(1, 2)));
        assert_eq!(sub.as_constant().unwrap(), GaussianRational::from_ratio(9, 8));
    }

    #[test]
    fn canonical_symbols() {
        let (s1, x) = Symbol::conn(Frame::F(1), Frame::H(1), Frame::F(2)).unwrap();
        let (s2, y) = Symbol::conn(Frame::F(1), Frame::F(2), Frame::H(1)).unwrap();
        assert_eq!(x, y);
        assert_eq!(s1, -s2);
        assert!(Symbol::conn(Frame::F(1), Frame::F(2), Frame::F(2)).is_none());
        let (r1, u) = Symbol::riem(Frame::F(2), Frame::F(1), Frame::H(1), Frame::F(1)).unwrap();
        let (r2, v) = Symbol::riem(Frame::F(1), Frame::H(1), Frame::F(1), Frame::F(2)).unwrap();
        assert_eq!(u, v);
        assert_eq!(r1, r2);
    }
}
