//! Linear combinations of canonical words over a commutative coefficient ring,
//! and the trace functional.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::word::{normalize, CliffordWord, Generator};
use crate::symbolic::{GaussianRational, RationalXi, ScalarPoly, Symbol};

/// Commutative coefficient ring for [`Multivector`].
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn czero() -> Self;
    fn cone() -> Self;
    fn cis_zero(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_poly(p: &ScalarPoly) -> Self;
}

impl Coeff for ScalarPoly {
    fn czero() -> Self {
        Zero::zero()
    }
    fn cone() -> Self {
        One::one()
    }
    fn cis_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_poly(p: &ScalarPoly) -> Self {
        p.clone()
    }
}

impl Coeff for RationalXi {
    fn czero() -> Self {
        Zero::zero()
    }
    fn cone() -> Self {
        One::one()
    }
    fn cis_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_poly(p: &ScalarPoly) -> Self {
        RationalXi::constant(p.clone())
    }
}

/// Exact linear combination of canonical words.
#[derive(Clone, PartialEq, Default)]
pub struct Multivector<C: Coeff> {
    terms: BTreeMap<CliffordWord, C>,
}

/// Clifford element with polynomial coefficients.
pub type CliffordElement = Multivector<ScalarPoly>;

impl<C: Coeff> Multivector<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn scalar(c: C) -> Self {
        Self::word(CliffordWord::identity(), c)
    }

    pub fn identity() -> Self {
        Self::scalar(C::cone())
    }

    pub fn word(w: CliffordWord, c: C) -> Self {
        let mut m = Self::zero();
        m.add_term(w, c);
        m
    }

    pub fn generator(g: Generator) -> Self {
        Self::word(CliffordWord::single(g), C::cone())
    }

    /// The canonical form of a raw generator product.
    pub fn from_raw(raw: &[Generator]) -> Self {
        let (s, w) = normalize(raw);
        let c = if s > 0 { C::cone() } else { C::cone().neg_ref() };
        Self::word(w, c)
    }

    pub fn add_term(&mut self, w: CliffordWord, c: C) {
        if c.cis_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v = v.add_ref(&c);
                if v.cis_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CliffordWord, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &CliffordWord) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::czero)
    }

    /// Coefficient of the empty word.
    pub fn identity_coefficient(&self) -> C {
        self.coefficient(&CliffordWord::identity())
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(*w, c.mul_ref(s));
        }
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Multivector<D> {
        let mut out = Multivector::<D>::zero();
        for (w, c) in &self.terms {
            out.add_term(*w, f(c));
        }
        out
    }

    /// Embeds polynomial coefficients into another ring.
    pub fn lift<D: Coeff>(x: &Multivector<ScalarPoly>) -> Multivector<D> {
        x.map_coeffs(D::from_poly)
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let (s, w) = w1.mul(w2);
                let c = c1.mul_ref(c2);
                out.add_term(w, if s > 0 { c } else { c.neg_ref() });
            }
        }
        out
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(*w, c.clone());
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    /// Trace: `totalDim ×` identity coefficient.
    pub fn trace(&self, dim: &TraceDim) -> C {
        self.identity_coefficient().mul_ref(&C::from_poly(&dim.as_poly()))
    }
}

impl<C: Coeff> Add for &Multivector<C> {
    type Output = Multivector<C>;
    fn add(self, o: &Multivector<C>) -> Multivector<C> {
        self.add_ref(o)
    }
}

impl<C: Coeff> Sub for &Multivector<C> {
    type Output = Multivector<C>;
    fn sub(self, o: &Multivector<C>) -> Multivector<C> {
        self.add_ref(&o.neg_ref())
    }
}

impl<C: Coeff> Mul for &Multivector<C> {
    type Output = Multivector<C>;
    fn mul(self, o: &Multivector<C>) -> Multivector<C> {
        self.mul_ref(o)
    }
}

impl<C: Coeff> Neg for &Multivector<C> {
    type Output = Multivector<C>;
    fn neg(self) -> Multivector<C> {
        self.neg_ref()
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for Multivector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})·{w}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<C: Coeff> fmt::Debug for Multivector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c:?})·{w}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Dimensions of `S(F)` and `S(F) ⊗ Λ(F^⊥*)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct AlgebraSignature {
    pub p: usize,
    pub q: usize,
}

impl AlgebraSignature {
    pub fn new(p: usize, q: usize) -> Self {
        assert!(p <= MAX_DIM && q <= MAX_DIM, "signature out of range");
        Self { p, q }
    }

    /// `l̃ = 2^{⌊p/2⌋}`.
    pub fn leaf_dim(&self) -> u64 {
        1u64 << (self.p / 2)
    }

    /// `l̃ · 2^q`.
    pub fn total_dim(&self) -> u64 {
        self.leaf_dim() << self.q
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    pub fn trace_dim(&self) -> TraceDim {
        TraceDim::Concrete(self.total_dim())
    }
}

const MAX_DIM: usize = super::word::MAX_INDEX as usize;

/// The fibre dimension used by the trace: concrete, or the symbol `l̃·2^q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TraceDim {
    Concrete(u64),
    Symbolic,
}

impl TraceDim {
    pub fn as_poly(&self) -> ScalarPoly {
        match self {
            TraceDim::Concrete(d) => ScalarPoly::constant(GaussianRational::from_int(*d as i64)),
            TraceDim::Symbolic => ScalarPoly::var(Symbol::TotalDim),
        }
    }
}

/// `trace(x)` for a polynomial-coefficient element.
pub fn trace(x: &CliffordElement, sig: &AlgebraSignature) -> ScalarPoly {
    x.trace(&sig.trace_dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    fn g(x: Generator) -> CliffordElement {
        CliffordElement::generator(x)
    }

    #[test]
    fn dim_four_normal_square() {
        let sig = AlgebraSignature::new(2, 2);
        assert_eq!(sig.total_dim(), 8);
        let cn = g(Ch(2));
        assert_eq!(trace(&(&cn * &cn), &sig), ScalarPoly::int(-8));
    }

    #[test]
    fn exterior_quartic_identity() {
        // tr[ĉ_s ĉ_t ĉ_s' ĉ_t'] = (δ_t^s' δ_s^t' − δ_t^t' δ_s^s') 2^q for t ≠ s, t' ≠ s'
        let sig = AlgebraSignature::new(0, 3);
        for s in 1..=3u8 {
            for t in 1..=3u8 {
                for s2 in 1..=3u8 {
                    for t2 in 1..=3u8 {
                        if s == t || s2 == t2 {
                            continue;
                        }
                        let x = CliffordElement::from_raw(&[Hh(s), Hh(t), Hh(s2), Hh(t2)]);
                        let d = |a: u8, b: u8| (a == b) as i64;
                        let want = (d(t, s2) * d(s, t2) - d(t, t2) * d(s, s2)) * 8;
                        assert_eq!(trace(&x, &sig), ScalarPoly::int(want));
                    }
                }
            }
        }
    }

    #[test]
    fn odd_words_are_traceless() {
        let sig = AlgebraSignature::new(3, 2);
        for x in [Cf(1), Ch(2), Hh(1)] {
            assert!(trace(&g(x), &sig).is_zero());
        }
        let w = CliffordElement::from_raw(&[Cf(1), Ch(1), Hh(2)]);
        assert!(trace(&w, &sig).is_zero());
    }
}
