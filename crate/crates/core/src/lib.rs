//! Exact decision procedures for Liouvillian integrability of second-order
//! linear ODEs and planar Riccati foliations.

pub mod applications;
pub mod darboux;
pub mod error;
pub mod exprparse;
pub mod exactalg;
pub mod kovacic;
pub mod odeforms;
pub mod specialfn;

pub use error::{Error, Result};
pub use exactalg::{Field, Ring, Scalar};

/// Polynomials over the square-root tower.
pub type Poly = exactalg::UniPoly<Scalar>;
/// Rational functions over the square-root tower.
pub type RatFunc = exactalg::RationalFunction<Scalar>;
/// Polynomials over the rationals.
pub type QPoly = exactalg::UniPoly<num_rational::BigRational>;
/// Rational functions over the rationals.
pub type QRatFunc = exactalg::RationalFunction<num_rational::BigRational>;
