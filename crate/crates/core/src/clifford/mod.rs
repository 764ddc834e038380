//! The algebra generated by `c(f_i)`, `c(h_s)` and `ĉ(h_s)` acting on
//! `S(F) ⊗ Λ(F^⊥*)`: normal ordering, products and traces.

pub mod element;
pub mod matrix;
pub mod word;

pub use element::{trace, AlgebraSignature, CliffordElement, Coeff, Multivector, TraceDim};
pub use matrix::{trace_via_matrix, Matrix, MatrixRep};
pub use word::{normalize, CliffordWord, Generator};

use crate::symbolic::{Frame, ScalarPoly};

/// `c(e)` for a frame vector.
pub fn c(e: Frame) -> CliffordElement {
    CliffordElement::generator(match e {
        Frame::F(i) => Generator::Cf(i),
        Frame::H(s) => Generator::Ch(s),
    })
}

/// `ĉ(h_s)`.
pub fn c_hat(s: u8) -> CliffordElement {
    CliffordElement::generator(Generator::Hh(s))
}

/// Polynomial multiple of an element.
pub fn scaled(x: &CliffordElement, s: &ScalarPoly) -> CliffordElement {
    x.scale(s)
}
