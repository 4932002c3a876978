//! Dense univariate polynomials over an exact coefficient ring.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::field::{Field, Render, Ring};

/// Dense polynomial `c[0] + c[1] x + ... + c[n] x^n` with `c[n] != 0`.
/// The zero polynomial has no coefficients and no degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Ring> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![F::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `x - c`
    pub fn linear_root(c: F) -> Self {
        Self::new(vec![-c, F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, at: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * at.clone() + c.clone())
    }

    /// `self(other(x))`
    pub fn compose(&self, other: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * other) + &Self::constant(c.clone()))
    }

    /// `self(x + c)`
    pub fn shift(&self, c: &F) -> Self {
        self.compose(&Self::new(vec![c.clone(), F::one()]))
    }

    /// Coefficients in reverse order, i.e. `x^deg * self(1/x)`.
    pub fn reversed(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(v)
    }

    /// Multiplicity of `x` as a factor.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> UniPoly<G> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        Ring::pow(self, e)
    }
}

impl<F: Field> UniPoly<F> {
    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let inv_lc = d.lc().inv();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quo = vec![F::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd].clone() * inv_lc.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            quo[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quo), Self::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(a: &Self, b: &Self) -> Self {
        // monic remainders keep the coefficients from growing
        let mut x = a.monic();
        let mut y = b.monic();
        while !y.is_zero() {
            let r = x.rem(&y).monic();
            x = y;
            y = r;
        }
        x
    }

    /// Yun's square-free decomposition: `self = lc * prod f_i^i` with each
    /// `f_i` monic, square-free and pairwise coprime. Returns `(f_i, i)` for
    /// the non-constant factors.
    pub fn square_free_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let mut a = Self::gcd(&f, &df);
        let mut b = f.exact_div(&a).unwrap();
        let mut c = df.exact_div(&a).unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            a = Self::gcd(&b, &d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).unwrap();
            c = d.exact_div(&a).unwrap();
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Square-free part (product of distinct monic irreducible factors).
    pub fn square_free_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return Self::one();
        }
        let f = self.monic();
        f.exact_div(&Self::gcd(&f, &f.derivative())).unwrap()
    }
}

impl<F: Ring + Render> UniPoly<F> {
    /// Canonical rendering in the variable `var`, highest degree first.
    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut text = c.render();
            let negative = !c.compound() && text.starts_with('-');
            if negative {
                text.remove(0);
            }
            if c.compound() {
                text = format!("({text})");
            }
            let unit = text == "1";
            let body = match (k, unit) {
                (0, _) => text,
                (1, true) => var.to_string(),
                (1, false) => format!("{text}*{var}"),
                (_, true) => format!("{var}^{k}"),
                (_, false) => format!("{text}*{var}^{k}"),
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

impl<F: Ring + Render> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("x"))
    }
}

impl<F: Ring> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly{:?}", self.coeffs)
    }
}

// ---------------------------------------------------------------------------
// arithmetic

impl<'a, F: Ring> Add<&'a UniPoly<F>> for &'a UniPoly<F> {
    type Output = UniPoly<F>;
    fn add(self, rhs: &UniPoly<F>) -> UniPoly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a, F: Ring> Sub<&'a UniPoly<F>> for &'a UniPoly<F> {
    type Output = UniPoly<F>;
    fn sub(self, rhs: &UniPoly<F>) -> UniPoly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a, F: Ring> Mul<&'a UniPoly<F>> for &'a UniPoly<F> {
    type Output = UniPoly<F>;
    fn mul(self, rhs: &UniPoly<F>) -> UniPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }
}

impl<F: Ring> Neg for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn neg(self) -> UniPoly<F> {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<F: Ring> Neg for UniPoly<F> {
    type Output = UniPoly<F>;
    fn neg(self) -> UniPoly<F> {
        -&self
    }
}

macro_rules! forward_poly {
    ($tr:ident, $m:ident) => {
        impl<F: Ring> $tr<UniPoly<F>> for UniPoly<F> {
            type Output = UniPoly<F>;
            fn $m(self, rhs: UniPoly<F>) -> UniPoly<F> {
                (&self).$m(&rhs)
            }
        }
        impl<'a, F: Ring> $tr<&'a UniPoly<F>> for UniPoly<F> {
            type Output = UniPoly<F>;
            fn $m(self, rhs: &UniPoly<F>) -> UniPoly<F> {
                (&self).$m(rhs)
            }
        }
    };
}

forward_poly!(Add, add);
forward_poly!(Sub, sub);
forward_poly!(Mul, mul);

/// Exact division; panics if the divisor does not divide.
impl<F: Field> Div<UniPoly<F>> for UniPoly<F> {
    type Output = UniPoly<F>;
    fn div(self, rhs: UniPoly<F>) -> UniPoly<F> {
        self.exact_div(&rhs).expect("inexact polynomial division")
    }
}

impl<F: Ring> Zero for UniPoly<F> {
    fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<F: Ring> One for UniPoly<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: Ring> Ring for UniPoly<F> {}
