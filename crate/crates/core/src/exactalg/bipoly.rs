//! Sparse bivariate polynomials in `(x, y)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::field::{Render, Ring};
use super::poly::UniPoly;
use super::ratfunc::RationalFunction;
use super::scalar::Scalar;

/// Terms keyed by `(deg_x, deg_y)`; no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl BiPoly {
    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), Scalar)>) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in it {
            let e: &mut Scalar = terms.entry(k).or_insert_with(Scalar::zero);
            *e += &c;
        }
        terms.retain(|_, c: &mut Scalar| !c.is_zero());
        BiPoly { terms }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn x() -> Self {
        Self::from_terms([((1, 0), Scalar::one())])
    }

    pub fn y() -> Self {
        Self::from_terms([((0, 1), Scalar::one())])
    }

    pub fn monomial(c: Scalar, i: u32, j: u32) -> Self {
        Self::from_terms([((i, j), c)])
    }

    /// Polynomial in `x` alone.
    pub fn from_x_poly(p: &UniPoly<Scalar>) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| ((i as u32, 0), c.clone())),
        )
    }

    /// `sum_j c_j(x) y^j`
    pub fn from_y_poly(p: &UniPoly<UniPoly<Scalar>>) -> Self {
        let mut out = Vec::new();
        for (j, c) in p.coeffs().iter().enumerate() {
            for (i, a) in c.coeffs().iter().enumerate() {
                out.push(((i as u32, j as u32), a.clone()));
            }
        }
        Self::from_terms(out)
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Scalar> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> Scalar {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, a)| (*k, a * c)))
    }

    pub fn dx(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|(&(i, j), a)| ((i - 1, j), a * &Scalar::int(i as i64))),
        )
    }

    pub fn dy(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((_, j), _)| *j > 0)
                .map(|(&(i, j), a)| ((i, j - 1), a * &Scalar::int(j as i64))),
        )
    }

    /// As a polynomial in `y` with coefficients in `x`.
    pub fn as_y_poly(&self) -> UniPoly<UniPoly<Scalar>> {
        let dy = self.degree_y().unwrap_or(0) as usize;
        let mut cols: Vec<Vec<Scalar>> = vec![Vec::new(); dy + 1];
        for (&(i, j), a) in &self.terms {
            let col = &mut cols[j as usize];
            if col.len() <= i as usize {
                col.resize(i as usize + 1, Scalar::zero());
            }
            col[i as usize] = a.clone();
        }
        UniPoly::new(cols.into_iter().map(UniPoly::new).collect())
    }

    /// As a polynomial in `y` over the rational functions in `x`.
    pub fn as_y_ratpoly(&self) -> UniPoly<RationalFunction<Scalar>> {
        self.as_y_poly().map(|c| RationalFunction::from_poly(c.clone()))
    }

    /// Swap the roles of `x` and `y`.
    pub fn swap_xy(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), a)| ((j, i), a.clone())))
    }

    /// Polynomial in `x` alone, if `y` does not occur.
    pub fn as_x_poly(&self) -> Option<UniPoly<Scalar>> {
        if self.degree_y().unwrap_or(0) > 0 {
            return None;
        }
        Some(self.as_y_poly().coeff(0))
    }

    pub fn is_constant(&self) -> bool {
        self.total_degree().unwrap_or(0) == 0
    }

    // lex order with y before x
    fn leading(&self) -> Option<((u32, u32), &Scalar)> {
        self.terms
            .iter()
            .max_by_key(|((i, j), _)| (*j, *i))
            .map(|(k, c)| (*k, c))
    }

    /// Exact quotient `self / d`, if `d` divides `self`.
    pub fn exact_div(&self, d: &BiPoly) -> Option<BiPoly> {
        let ((di, dj), dc) = d.leading()?;
        let dc_inv = dc.checked_inv()?;
        let mut rem = self.clone();
        let mut quo = BiPoly::zero();
        while let Some(((ri, rj), rc)) = rem.leading() {
            if ri < di || rj < dj {
                return None;
            }
            let t = BiPoly::monomial(rc * &dc_inv, ri - di, rj - dj);
            rem = &rem - &(&t * d);
            quo = &quo + &t;
        }
        Some(quo)
    }

    pub fn to_text(&self, vx: &str, vy: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        // graded order, highest total degree first, then by x-degree
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| std::cmp::Reverse((i + j, i)));
        for (i, j) in keys {
            let c = &self.terms[&(i, j)];
            let mut text = c.render();
            let negative = !c.compound() && text.starts_with('-');
            if negative {
                text.remove(0);
            }
            if c.compound() {
                text = format!("({text})");
            }
            let mut factors = Vec::new();
            if text != "1" || (i == 0 && j == 0) {
                factors.push(text);
            }
            for (v, e) in [(vx, i), (vy, j)] {
                match e {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("x", "y"))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({})", self.to_text("x", "y"))
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        BiPoly::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(k, c)| (*k, c.clone())),
        )
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.push(((i + k, j + l), a * b));
            }
        }
        BiPoly::from_terms(out)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

macro_rules! forward_bi {
    ($tr:ident, $m:ident) => {
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_bi!(Add, add);
forward_bi!(Sub, sub);
forward_bi!(Mul, mul);

impl Zero for BiPoly {
    fn zero() -> Self {
        BiPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for BiPoly {
    fn one() -> Self {
        Self::constant(Scalar::one())
    }
}

impl Ring for BiPoly {}

/// Derivation `P d/dx + Q d/dy` applied to a polynomial.
pub fn apply_field(p: &BiPoly, q: &BiPoly, f: &BiPoly) -> BiPoly {
    &(p * &f.dx()) + &(q * &f.dy())
}

/// Rational functions in `y` over rational functions in `x`.
pub type BiRat = RationalFunction<RationalFunction<Scalar>>;

/// `d/dx` on `K(y)` with `K = Q(x)`, acting on coefficients.
pub fn birat_dx(f: &BiRat) -> BiRat {
    let dn = f.numer().map(|c| c.derivative());
    let dd = f.denom().map(|c| c.derivative());
    let num = &(&dn * f.denom()) - &(f.numer() * &dd);
    BiRat::new(num, f.denom() * f.denom())
}

pub fn birat_dy(f: &BiRat) -> BiRat {
    f.derivative()
}

pub fn birat_from(f: &BiPoly) -> BiRat {
    BiRat::from_poly(f.as_y_ratpoly())
}

/// `y` in `K(y)`.
pub fn birat_y() -> BiRat {
    BiRat::x()
}

/// A rational function of `x` embedded as a constant in `K(y)`.
pub fn birat_const(c: &RationalFunction<Scalar>) -> BiRat {
    BiRat::constant(c.clone())
}
