//! Kovacic's algorithm for `xi'' = r xi` over the square-root tower.

mod case1;
mod case2;
mod case3;
mod local;

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::linsolve::linear_solve;
use crate::exactalg::roots::find_poles;
use crate::exactalg::{Point, Scalar, Tower, UniPoly};
use crate::odeforms::ReducedODE;
use crate::{Poly, RatFunc};

pub use case1::{case1, case1_all, verify_case1};
pub use case2::{case2, printed_quadratic, verify_case2};
pub use case3::{case3, verify_case3};
pub use local::{classify_point_case1, local_data, Case1Local, LocalData};

/// Polynomials in `omega` over `Q(x)`.
pub type OmegaPoly = UniPoly<RatFunc>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum KovacicResult {
    Case1 {
        m: usize,
        signs: Vec<(Point, Sign)>,
        omega: RatFunc,
        p: Poly,
    },
    Case2 {
        m: usize,
        e: Vec<(Point, i64)>,
        theta: RatFunc,
        p: Poly,
        /// `omega^2 + c1 omega + c0`, coefficients low to high.
        omega_poly: OmegaPoly,
    },
    Case3 {
        n: usize,
        m: usize,
        e: Vec<(Point, i64)>,
        theta: RatFunc,
        s: Poly,
        p: Poly,
        omega_poly: OmegaPoly,
    },
    Case4,
}

impl KovacicResult {
    pub fn case_number(&self) -> u8 {
        match self {
            KovacicResult::Case1 { .. } => 1,
            KovacicResult::Case2 { .. } => 2,
            KovacicResult::Case3 { .. } => 3,
            KovacicResult::Case4 => 4,
        }
    }

    pub fn is_liouvillian(&self) -> bool {
        !matches!(self, KovacicResult::Case4)
    }

    /// Re-checks the defining identity of the result against `r`.
    pub fn verify(&self, r: &RatFunc) -> bool {
        match self {
            KovacicResult::Case1 { omega, p, .. } => verify_case1(r, omega, p),
            KovacicResult::Case2 { theta, p, omega_poly, .. } => {
                verify_case2(r, theta, p) && is_riccati_invariant(r, omega_poly)
            }
            KovacicResult::Case3 { n, s, theta, p, omega_poly, .. } => {
                verify_case3(r, *n, s, theta, p) && is_riccati_invariant(r, omega_poly)
            }
            KovacicResult::Case4 => true,
        }
    }

    /// The rational Riccati solution `w = omega + P'/P` of a Case 1 result.
    pub fn riccati_solution(&self) -> Option<RatFunc> {
        match self {
            KovacicResult::Case1 { omega, p, .. } => Some(omega + &log_derivative(p)),
            _ => None,
        }
    }
}

/// One candidate examined by the search, for reporting.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceEntry {
    pub case: u8,
    pub n: Option<usize>,
    pub m: usize,
    pub choice: String,
    pub found: bool,
}

pub fn log_derivative(p: &Poly) -> RatFunc {
    RatFunc::new(p.derivative(), p.clone())
}

/// Tries Case 1, then 2, then 3; Case 4 if all fail.
pub fn solve_rlde(e: &ReducedODE) -> Result<KovacicResult> {
    solve_rlde_traced(e, &Tower::default()).map(|(r, _)| r)
}

pub fn solve_rlde_traced(
    e: &ReducedODE,
    tower: &Tower,
) -> Result<(KovacicResult, Vec<TraceEntry>)> {
    let r = &e.rho;
    let mut trace = Vec::new();
    let locals = local_data(r, tower)?;
    if let Some(res) = case1::case1_with(r, &locals, tower, &mut trace, false)?.into_iter().next() {
        return Ok((res, trace));
    }
    if let Some(res) = case2::case2_with(r, &locals, &mut trace)? {
        return Ok((res, trace));
    }
    if let Some(res) = case3::case3_with(r, &locals, &mut trace)? {
        return Ok((res, trace));
    }
    Ok((KovacicResult::Case4, trace))
}

/// Monic polynomial `P` of degree `m = images.len() - 1` with
/// `L(P) = 0`, where `images[k] = L(x^k)` for a linear operator `L`.
/// Free coefficients are set to zero when the solution is not unique.
pub fn monic_kernel_element(images: &[RatFunc]) -> Option<Poly> {
    let m = images.len() - 1;
    let mut den = Poly::one();
    for im in images {
        let g = Poly::gcd(&den, im.denom());
        den = &den * &im.denom().exact_div(&g).unwrap();
    }
    let nums: Vec<Poly> = images
        .iter()
        .map(|im| &im.numer().clone() * &den.exact_div(im.denom()).unwrap())
        .collect();
    let rows = nums.iter().filter_map(|p| p.degree()).max().map_or(0, |d| d + 1);
    if rows == 0 {
        return Some(Poly::monomial(Scalar::one(), m));
    }
    let a: Vec<Vec<Scalar>> = (0..rows)
        .map(|i| (0..m).map(|k| nums[k].coeff(i)).collect())
        .collect();
    let rhs: Vec<Scalar> = (0..rows).map(|i| -nums[m].coeff(i)).collect();
    if m == 0 {
        return rhs.iter().all(|v| v.is_zero()).then(Poly::one);
    }
    let sol = linear_solve(&a, &rhs)?;
    let mut coeffs = sol.particular;
    coeffs.push(Scalar::one());
    Some(Poly::new(coeffs))
}

/// True when every root of `big_r(omega)` solves `omega' = r - omega^2`,
/// i.e. `R_x + (r - omega^2) R_omega` vanishes modulo `R`.
pub fn is_riccati_invariant(r: &RatFunc, big_r: &OmegaPoly) -> bool {
    if big_r.degree().unwrap_or(0) == 0 {
        return false;
    }
    let rx = big_r.map(|c| c.derivative());
    let rw = big_r.derivative();
    let factor = OmegaPoly::new(vec![r.clone(), RatFunc::zero(), -RatFunc::one()]);
    let expr = &rx + &(&factor * &rw);
    expr.rem(big_r).is_zero()
}

/// All choices of one element per set, last set varying fastest.
pub(crate) fn cartesian(sets: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for s in sets {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                s.iter().map(move |e| {
                    let mut v = prefix.clone();
                    v.push(*e);
                    v
                })
            })
            .collect();
    }
    out
}

pub(crate) fn check_tower<'a>(tower: &Tower, values: impl IntoIterator<Item = &'a Scalar>) -> Result<()> {
    tower.check(values)
}

pub(crate) fn ratfunc_scalars(f: &RatFunc) -> impl Iterator<Item = &Scalar> {
    f.numer().coeffs().iter().chain(f.denom().coeffs().iter())
}

pub(crate) fn poles(r: &RatFunc, tower: &Tower) -> Result<Vec<crate::exactalg::PoleData>> {
    find_poles(r, tower)
}

/// `xi_2 = xi_1 * integral(dx / xi_1^2)` with `xi_1 = P exp(integral omega)`;
/// kept as the pair `(P, omega)` since the integral is not evaluated.
#[derive(Clone, Debug, PartialEq)]
pub struct SecondSolution {
    pub p: Poly,
    pub omega: RatFunc,
}

impl SecondSolution {
    pub fn to_text(&self) -> String {
        if self.omega.is_zero() && self.p.is_one() {
            return "x".into();
        }
        let xi1 = if self.omega.is_zero() {
            format!("({})", self.p.to_text("x"))
        } else if self.p.is_one() {
            format!("exp(int({}))", self.omega.to_text("x"))
        } else {
            format!("({})*exp(int({}))", self.p.to_text("x"), self.omega.to_text("x"))
        };
        let integrand = if self.omega.is_zero() {
            format!("1/({})^2", self.p.to_text("x"))
        } else if self.p.is_one() {
            format!("exp(int({}))", (-&self.omega.scale(&Scalar::int(2))).to_text("x"))
        } else {
            format!(
                "exp(int({}))/({})^2",
                (-&self.omega.scale(&Scalar::int(2))).to_text("x"),
                self.p.to_text("x")
            )
        };
        format!("{xi1}*int({integrand})")
    }
}

pub fn second_solution(res: &KovacicResult) -> Result<SecondSolution> {
    match res {
        KovacicResult::Case1 { omega, p, .. } => Ok(SecondSolution {
            p: p.clone(),
            omega: omega.clone(),
        }),
        _ => Err(Error::Invalid("second solution needs a Case 1 result".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&n| Scalar::int(n)).collect())
    }

    fn rho(n: &[i64], d: &[i64]) -> ReducedODE {
        ReducedODE { rho: RatFunc::new(p(n), p(d)) }
    }

    #[test]
    fn gaussian_case1() {
        let res = solve_rlde(&rho(&[-1, 0, 1], &[1])).unwrap();
        match res {
            KovacicResult::Case1 { omega, p: pp, m, .. } => {
                assert_eq!(omega, -RatFunc::x());
                assert_eq!(pp, Poly::one());
                assert_eq!(m, 0);
            }
            other => panic!("expected Case 1, got {other:?}"),
        }
    }

    #[test]
    fn constant_potential() {
        match solve_rlde(&rho(&[1], &[1])).unwrap() {
            KovacicResult::Case1 { omega, p: pp, .. } => {
                assert_eq!(omega, RatFunc::one());
                assert_eq!(pp, Poly::one());
            }
            other => panic!("expected Case 1, got {other:?}"),
        }
    }

    #[test]
    fn airy_is_case4() {
        assert_eq!(solve_rlde(&rho(&[0, 1], &[1])).unwrap(), KovacicResult::Case4);
        assert_eq!(solve_rlde(&rho(&[1, 0, 0, 1], &[1])).unwrap(), KovacicResult::Case4);
    }

    #[test]
    fn inverse_x_has_no_case2_candidates() {
        let r = RatFunc::new(p(&[1]), p(&[0, 1]));
        let locals = local_data(&r, &Tower::default()).unwrap();
        let mut trace = Vec::new();
        assert_eq!(case2::case2_with(&r, &locals, &mut trace).unwrap(), None);
        assert!(trace.is_empty());
    }

    #[test]
    fn second_solutions() {
        let s = SecondSolution { p: Poly::one(), omega: RatFunc::zero() };
        assert_eq!(s.to_text(), "x");
        let s = SecondSolution { p: Poly::one(), omega: -RatFunc::x() };
        assert_eq!(s.to_text(), "exp(int(-x))*int(exp(int(2*x)))");
    }

    #[test]
    fn verify_examples() {
        let x = RatFunc::x();
        assert!(verify_case1(&RatFunc::from_poly(p(&[-1, 0, 1])), &-x.clone(), &Poly::one()));
        assert!(verify_case1(&RatFunc::one(), &RatFunc::one(), &Poly::one()));
        assert!(!verify_case1(&x, &RatFunc::zero(), &Poly::one()));
    }
}
