//! Coefficient traits shared by the polynomial, rational-function and
//! linear-algebra layers.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A commutative ring with exact equality.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self {
        let mut acc = Self::zero();
        let unit = if n < 0 { -Self::one() } else { Self::one() };
        for _ in 0..n.unsigned_abs() {
            acc = acc + unit.clone();
        }
        acc
    }

    fn pow(&self, exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// An exact field of characteristic zero.
pub trait Field: Ring + Div<Output = Self> {
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    fn from_rational(q: &BigRational) -> Self {
        Self::from_ratio(q.numer(), q.denom())
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self;
}

impl Ring for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Field for BigRational {
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        BigRational::new(num.clone(), den.clone())
    }
}

/// Shorthand for a rational constant.
pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical ASCII rendering of a coefficient.
pub trait Render {
    fn render(&self) -> String;

    /// True when the rendering is a sum and must be parenthesised as a factor.
    fn compound(&self) -> bool {
        false
    }
}

impl Render for BigRational {
    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}
