//! Exact symbolic engine for noncommutative residues of sub-Dirac operators on
//! foliations: Clifford traces, `π⁺` residue integrals, boundary-term cases,
//! heat-trace coefficients and warped-product spectral-action formulas.

pub mod boundary;
pub mod clifford;
pub mod error;
pub mod heat;
pub mod quad;
pub mod symbolic;
pub mod symbols;
pub mod warped;

pub use error::{Result, WresError};
