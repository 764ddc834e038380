//! Exact scalar arithmetic: Gaussian rationals, symbol polynomials, rational
//! functions in `ξ_n`, unit-sphere moments and unit-carrying values.

pub mod gauss;
pub mod poly;
pub mod sphere;
pub mod units;
pub mod xi;

pub use gauss::{q, qi, GaussianRational, Q};
pub use poly::{Frame, Monomial, QuadraticConstraint, ScalarPoly, Symbol};
pub use sphere::{moment_ratio, sphere_average, sphere_moment};
pub use units::{Exp, Quantity, Unit, UnitMonomial, UnitValue};
pub use xi::RationalXi;

/// `∫_ℝ f dξ_n` as an exact quantity (`2πi · Res_{+i} f`).
pub fn integrate_line(f: &RationalXi) -> crate::error::Result<Quantity> {
    Ok(&Quantity::from_poly(&f.integrate_line_over_pi()?) * &Quantity::pi())
}
