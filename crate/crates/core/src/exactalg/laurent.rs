//! Truncated Laurent expansions and square roots of them at a point of the
//! projective line.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::poly::UniPoly;
use super::ratfunc::RationalFunction;
use super::roots::{PoleData, Point};
use super::scalar::Scalar;
use crate::error::{Error, Result};

type RatFunc = RationalFunction<Scalar>;

/// Leading terms of a Laurent series at `center`. Exponents are in `x - c`
/// for a finite center and in `x` at infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentHead {
    pub center: Point,
    pub terms: BTreeMap<i64, Scalar>,
}

impl LaurentHead {
    pub fn zero(center: Point) -> Self {
        LaurentHead {
            center,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The head as a rational function of `x`.
    pub fn to_ratfunc(&self) -> RatFunc {
        let mut acc = RatFunc::zero();
        for (&e, a) in &self.terms {
            let term = match &self.center {
                Point::Finite(c) => {
                    if e >= 0 {
                        RatFunc::from_poly(UniPoly::linear_root(c.clone()).pow(e as u32))
                    } else {
                        RatFunc::inv_linear_pow(c, (-e) as u32)
                    }
                }
                Point::Infinity => {
                    if e >= 0 {
                        RatFunc::from_poly(UniPoly::monomial(Scalar::int(1), e as usize))
                    } else {
                        RatFunc::inv_linear_pow(&Scalar::zero(), (-e) as u32)
                    }
                }
            };
            acc = &acc + &term.scale(a);
        }
        acc
    }
}

/// Power series of `num/den` at 0, `den(0) != 0`, first `n` coefficients.
pub fn power_series(num: &UniPoly<Scalar>, den: &UniPoly<Scalar>, n: usize) -> Vec<Scalar> {
    let d0_inv = den.coeff(0).checked_inv().expect("power series of a pole");
    let mut out: Vec<Scalar> = Vec::with_capacity(n);
    for k in 0..n {
        let mut s = num.coeff(k);
        for j in 1..=k.min(den.degree().unwrap_or(0)) {
            s = s - den.coeff(j) * &out[k - j];
        }
        out.push(s * &d0_inv);
    }
    out
}

/// Laurent expansion of `f` at `at` in the local parameter (`x - c`, or
/// `1/x` at infinity). Returns the valuation and `n` coefficients starting
/// there. The zero function gets valuation 0 and zero coefficients.
pub fn series_at(f: &RatFunc, at: &Point, n: usize) -> (i64, Vec<Scalar>) {
    if f.is_zero() {
        return (0, vec![Scalar::zero(); n]);
    }
    let local = match at {
        Point::Finite(c) => f.shift(c),
        Point::Infinity => f.invert_variable(),
    };
    let dv = local.denom().low_order().unwrap();
    let nv = local.numer().low_order().unwrap();
    let num = UniPoly::new(local.numer().coeffs()[nv..].to_vec());
    let den = UniPoly::new(local.denom().coeffs()[dv..].to_vec());
    (nv as i64 - dv as i64, power_series(&num, &den, n))
}

/// Coefficient of the local parameter to the power `e`.
pub fn coefficient_at(f: &RatFunc, at: &Point, e: i64) -> Scalar {
    let (val, _) = series_at(f, at, 0);
    if e < val || f.is_zero() {
        return Scalar::zero();
    }
    let (_, cs) = series_at(f, at, (e - val + 1) as usize);
    cs.last().cloned().unwrap_or_else(Scalar::zero)
}

/// Square root of a series `a_0 + a_1 t + ...` with `a_0 != 0`, by the
/// coefficient recurrence `2 s_0 s_k = a_k - sum_{0<i<k} s_i s_{k-i}`.
pub fn sqrt_series(a: &[Scalar]) -> Result<Vec<Scalar>> {
    let Some(a0) = a.first() else {
        return Ok(Vec::new());
    };
    let s0 = a0.try_sqrt()?;
    let inv = (Scalar::int(2) * &s0)
        .checked_inv()
        .ok_or_else(|| Error::Invalid("square root of a series with zero head".into()))?;
    let mut s = vec![s0];
    for k in 1..a.len() {
        let mut acc = a[k].clone();
        for i in 1..k {
            acc = acc - &s[i] * &s[k - i];
        }
        s.push(acc * &inv);
    }
    Ok(s)
}

/// `[sqrt r]` at a point of even order `2v >= 4` (finite) or `-2v <= 0`
/// (infinity), together with the coefficient `b` of the next power of `r`
/// not matched by the square of the head.
pub fn sqrt_laurent(r: &RatFunc, at: &PoleData) -> Result<(LaurentHead, Scalar)> {
    let order = at.order;
    if order % 2 != 0 {
        return Err(Error::OddLeadingOrder(order));
    }
    let v = match at.point {
        Point::Finite(_) if order >= 4 => order / 2,
        Point::Infinity if order <= 0 => -order / 2,
        _ => {
            return Err(Error::Invalid(format!(
                "no square-root head at {} with order {order}",
                at.point
            )))
        }
    };
    let (val, coeffs) = series_at(r, &at.point, (v + 2) as usize);
    debug_assert_eq!(val, -2 * v);
    let (head_len, b_index) = match at.point {
        // exponents -v..-2, b at -(v+1)
        Point::Finite(_) => ((v - 1) as usize, (v - 1) as usize),
        // exponents v..0 in x, b at x^(v-1)
        Point::Infinity => ((v + 1) as usize, (v + 1) as usize),
    };
    let s = sqrt_series(&coeffs[..head_len.max(1)])?;
    let s = &s[..head_len];
    // square of the head at relative index b_index
    let mut sq = Scalar::zero();
    for i in 0..s.len() {
        let j = b_index as i64 - i as i64;
        if j >= 0 && (j as usize) < s.len() {
            sq = sq + &s[i] * &s[j as usize];
        }
    }
    let b = &coeffs[b_index] - &sq;
    let mut terms = BTreeMap::new();
    for (i, c) in s.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // local exponent -v + i; at infinity the local parameter is 1/x
        let e = match at.point {
            Point::Finite(_) => -v + i as i64,
            Point::Infinity => v - i as i64,
        };
        terms.insert(e, c.clone());
    }
    Ok((
        LaurentHead {
            center: at.point.clone(),
            terms,
        },
        b,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly<Scalar> {
        UniPoly::new(c.iter().map(|&n| Scalar::int(n)).collect())
    }

    #[test]
    fn inverse_fourth_power() {
        let r = RatFunc::new(p(&[1]), p(&[0, 0, 0, 0, 1]));
        let at = PoleData { point: Point::Finite(Scalar::int(0)), order: 4 };
        let (h, b) = sqrt_laurent(&r, &at).unwrap();
        assert_eq!(h.terms, BTreeMap::from([(-2, Scalar::int(1))]));
        assert!(b.is_zero());
    }

    #[test]
    fn quadratic_at_infinity() {
        let at = PoleData { point: Point::Infinity, order: -2 };
        let (h, b) = sqrt_laurent(&RatFunc::from_poly(p(&[-1, 0, 1])), &at).unwrap();
        assert_eq!(h.terms, BTreeMap::from([(1, Scalar::int(1))]));
        assert_eq!(b, Scalar::int(-1));
        let (h, b) = sqrt_laurent(&RatFunc::from_poly(p(&[0, 0, 1])), &at).unwrap();
        assert_eq!(h.to_ratfunc(), RatFunc::x());
        assert!(b.is_zero());
    }

    #[test]
    fn odd_order_is_a_branch_point() {
        let at = PoleData { point: Point::Infinity, order: -1 };
        assert_eq!(
            sqrt_laurent(&RatFunc::x(), &at),
            Err(Error::OddLeadingOrder(-1))
        );
    }

    #[test]
    fn series_of_geometric() {
        let f = RatFunc::new(p(&[1]), p(&[1, -1]));
        let (val, cs) = series_at(&f, &Point::Finite(Scalar::int(0)), 4);
        assert_eq!(val, 0);
        assert_eq!(cs, vec![Scalar::int(1); 4]);
        let (val, _) = series_at(&f, &Point::Infinity, 1);
        assert_eq!(val, 1);
    }
}
