//! Rational functions in one variable, kept in lowest terms with a monic
//! denominator so that equality is structural.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::field::{Field, Render, Ring};
use super::poly::UniPoly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction<F> {
    num: UniPoly<F>,
    den: UniPoly<F>,
}

impl<F: Field> RationalFunction<F> {
    /// Panics if `den` is zero; see [`RationalFunction::checked_new`].
    pub fn new(num: UniPoly<F>, den: UniPoly<F>) -> Self {
        Self::checked_new(num, den).expect("rational function with zero denominator")
    }

    pub fn checked_new(num: UniPoly<F>, den: UniPoly<F>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let g = UniPoly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let lc = den.lc();
        if lc.is_one() {
            Some(RationalFunction { num, den })
        } else {
            let inv = lc.inv();
            Some(RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            })
        }
    }

    pub fn from_poly(p: UniPoly<F>) -> Self {
        RationalFunction {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn x() -> Self {
        Self::from_poly(UniPoly::x())
    }

    /// `1 / (x - c)^k`
    pub fn inv_linear_pow(c: &F, k: u32) -> Self {
        RationalFunction {
            num: UniPoly::one(),
            den: UniPoly::linear_root(c.clone()).pow(k),
        }
    }

    pub fn numer(&self) -> &UniPoly<F> {
        &self.num
    }

    pub fn denom(&self) -> &UniPoly<F> {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_poly(&self) -> Option<UniPoly<F>> {
        self.is_poly().then(|| self.num.clone())
    }

    pub fn as_constant(&self) -> Option<F> {
        (self.is_poly() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den)
    }

    /// Value at a point, `None` at a pole.
    pub fn eval(&self, at: &F) -> Option<F> {
        let d = self.den.eval(at);
        (!d.is_zero()).then(|| self.num.eval(at) / d)
    }

    /// Order of vanishing at infinity: `deg den - deg num`.
    pub fn order_at_infinity(&self) -> Option<i64> {
        let n = self.num.degree()? as i64;
        Some(self.den.degree().unwrap() as i64 - n)
    }

    /// `self(g(x))`
    pub fn compose(&self, g: &Self) -> Self {
        fn horner<F: Field>(p: &UniPoly<F>, g: &RationalFunction<F>) -> RationalFunction<F> {
            p.coeffs()
                .iter()
                .rev()
                .fold(RationalFunction::zero(), |acc, c| {
                    &(&acc * g) + &RationalFunction::constant(c.clone())
                })
        }
        &horner(&self.num, g) / &horner(&self.den, g)
    }

    /// `self(x + c)`
    pub fn shift(&self, c: &F) -> Self {
        Self::new(self.num.shift(c), self.den.shift(c))
    }

    /// `self(1/x)`
    pub fn invert_variable(&self) -> Self {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let mut num = self.num.reversed();
        let mut den = self.den.reversed();
        // num(1/x) = x^-dn * rev(num)
        if dd > dn {
            num = &num * &UniPoly::monomial(F::one(), dd - dn);
        } else if dn > dd {
            den = &den * &UniPoly::monomial(F::one(), dn - dd);
        }
        Self::new(num, den)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> RationalFunction<G> {
        RationalFunction::new(self.num.map(&f), self.den.map(&f))
    }

    pub fn pow(&self, e: i32) -> Self {
        let p = Ring::pow(self, e.unsigned_abs());
        if e < 0 {
            p.inv()
        } else {
            p
        }
    }

    pub fn checked_inv(&self) -> Option<Self> {
        Self::checked_new(self.den.clone(), self.num.clone())
    }
}

impl<F: Field + Render> RationalFunction<F> {
    pub fn to_text(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.to_text(var);
        }
        let n = self.num.to_text(var);
        let n = if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
            || (self.num.coeffs().iter().any(|c| c.compound()))
        {
            format!("({n})")
        } else {
            n
        };
        let d = self.den.to_text(var);
        let single_term = self.den.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
        if single_term && !d.contains('*') && !self.den.lc().compound() {
            format!("{n}/{d}")
        } else {
            format!("{n}/({d})")
        }
    }
}

impl<F: Field + Render> Render for RationalFunction<F> {
    fn render(&self) -> String {
        self.to_text("x")
    }
    fn compound(&self) -> bool {
        !(self.den.is_one()
            && self.num.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
            && !self.num.coeffs().iter().any(|c| c.compound())
            && self.num.degree().unwrap_or(0) == 0)
    }
}

impl<F: Field + Render> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("x"))
    }
}

impl<F: Field> fmt::Debug for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

impl<'a, F: Field> Add<&'a RationalFunction<F>> for &'a RationalFunction<F> {
    type Output = RationalFunction<F>;
    fn add(self, rhs: &RationalFunction<F>) -> RationalFunction<F> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        // both operands are reduced, so a polynomial summand cannot cancel
        if rhs.den.is_one() {
            return RationalFunction { num: &self.num + &(&rhs.num * &self.den), den: self.den.clone() };
        }
        if self.den.is_one() {
            return RationalFunction { num: &rhs.num + &(&self.num * &rhs.den), den: rhs.den.clone() };
        }
        let g = UniPoly::gcd(&self.den, &rhs.den);
        let (b, d) = (self.den.exact_div(&g).unwrap(), rhs.den.exact_div(&g).unwrap());
        RationalFunction::new(&(&self.num * &d) + &(&rhs.num * &b), &self.den * &d)
    }
}

impl<'a, F: Field> Sub<&'a RationalFunction<F>> for &'a RationalFunction<F> {
    type Output = RationalFunction<F>;
    fn sub(self, rhs: &RationalFunction<F>) -> RationalFunction<F> {
        self + &(-rhs)
    }
}

impl<'a, F: Field> Mul<&'a RationalFunction<F>> for &'a RationalFunction<F> {
    type Output = RationalFunction<F>;
    fn mul(self, rhs: &RationalFunction<F>) -> RationalFunction<F> {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        // cross-cancel; the result is then already reduced
        let g1 = UniPoly::gcd(&self.num, &rhs.den);
        let g2 = UniPoly::gcd(&rhs.num, &self.den);
        let num = &self.num.exact_div(&g1).unwrap() * &rhs.num.exact_div(&g2).unwrap();
        let den = &self.den.exact_div(&g2).unwrap() * &rhs.den.exact_div(&g1).unwrap();
        let lc = den.lc();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.inv();
            RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }
}

impl<'a, F: Field> Div<&'a RationalFunction<F>> for &'a RationalFunction<F> {
    type Output = RationalFunction<F>;
    fn div(self, rhs: &RationalFunction<F>) -> RationalFunction<F> {
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl<F: Field> Neg for &RationalFunction<F> {
    type Output = RationalFunction<F>;
    fn neg(self) -> RationalFunction<F> {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<F: Field> Neg for RationalFunction<F> {
    type Output = RationalFunction<F>;
    fn neg(self) -> RationalFunction<F> {
        -&self
    }
}

macro_rules! forward_rf {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr<RationalFunction<F>> for RationalFunction<F> {
            type Output = RationalFunction<F>;
            fn $m(self, rhs: RationalFunction<F>) -> RationalFunction<F> {
                (&self).$m(&rhs)
            }
        }
        impl<'a, F: Field> $tr<&'a RationalFunction<F>> for RationalFunction<F> {
            type Output = RationalFunction<F>;
            fn $m(self, rhs: &RationalFunction<F>) -> RationalFunction<F> {
                (&self).$m(rhs)
            }
        }
    };
}

forward_rf!(Add, add);
forward_rf!(Sub, sub);
forward_rf!(Mul, mul);
forward_rf!(Div, div);

impl<F: Field> Zero for RationalFunction<F> {
    fn zero() -> Self {
        RationalFunction {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field> One for RationalFunction<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: Field> Ring for RationalFunction<F> {
    fn from_i64(n: i64) -> Self {
        Self::constant(F::from_i64(n))
    }
}

impl<F: Field> Field for RationalFunction<F> {
    fn inv(&self) -> Self {
        self.checked_inv().expect("inverse of zero rational function")
    }
    fn from_ratio(num: &num_bigint::BigInt, den: &num_bigint::BigInt) -> Self {
        Self::constant(F::from_ratio(num, den))
    }
}

impl<F: Field> From<UniPoly<F>> for RationalFunction<F> {
    fn from(p: UniPoly<F>) -> Self {
        Self::from_poly(p)
    }
}
