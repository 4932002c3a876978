//! Exact arithmetic: rationals with a bounded tower of square roots,
//! polynomials, rational functions, Laurent heads and linear solving.

pub mod bipoly;
pub mod field;
pub mod laurent;
pub mod linsolve;
pub mod poly;
pub mod ratfunc;
pub mod roots;
pub mod scalar;

pub use field::{q, Field, Render, Ring};
pub use poly::UniPoly;
pub use ratfunc::RationalFunction;
pub use scalar::{Scalar, Tower};
pub use laurent::{sqrt_laurent, LaurentHead};
pub use linsolve::{linear_solve, Solution};
pub use roots::{find_poles, partial_fractions, PoleData, Point};
pub use bipoly::BiPoly;
