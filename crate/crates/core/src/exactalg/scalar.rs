//! Elements of multiquadratic number fields `Q(sqrt(d1), ..., sqrt(dk))`.
//!
//! A [`Scalar`] is stored as a finite sum `sum_s q_s * sqrt(s)` where each `s`
//! is a square-free integer (possibly negative) and `q_s` is rational. The
//! convention `sqrt(-a) = i*sqrt(a)` for `a > 0` fixes products of basis
//! elements, so every value carries its own field context and values coming
//! from different towers can be mixed freely.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{Field, Ring};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar {
    // sorted by radicand; no zero coefficients; radicand 1 is the rational part
    terms: Vec<(i64, BigRational)>,
}

impl Scalar {
    pub fn rational(q: BigRational) -> Self {
        if q.is_zero() {
            Self::default()
        } else {
            Scalar { terms: vec![(1, q)] }
        }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `sqrt(d)` for an integer `d`, simplified to `f * sqrt(u)`.
    pub fn sqrt_int(d: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(d)))
            .sqrt()
            .expect("square root of a machine integer is always representable")
    }

    fn from_map(map: BTreeMap<i64, BigRational>) -> Self {
        Scalar {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(i64, BigRational)] {
        &self.terms
    }

    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|(s, _)| *s == 1)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(1, c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    pub fn is_integer(&self) -> bool {
        self.to_integer().is_some()
    }

    /// Square-free radicands appearing with a nonzero coefficient (excluding 1).
    pub fn radicands(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.iter().map(|(s, _)| *s).filter(|s| *s != 1)
    }

    /// Generators of the smallest multiquadratic field holding this value:
    /// `-1` and the primes dividing its radicands.
    pub fn generators(&self) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        for s in self.radicands() {
            out.extend(radicand_primes(s));
        }
        out
    }

    /// Galois conjugate flipping the sign of `sqrt(g)` for a generator `g`.
    pub fn conjugate(&self, g: i64) -> Self {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(s, c)| {
                    if contains_generator(*s, g) {
                        (*s, -c.clone())
                    } else {
                        (*s, c.clone())
                    }
                })
                .collect(),
        }
    }

    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.to_rational() {
            return Some(Self::rational(q.recip()));
        }
        let g = *self.generators().iter().next_back()?;
        let conj = self.conjugate(g);
        let norm = self * &conj;
        let inv_norm = norm.checked_inv()?;
        Some(conj * inv_norm)
    }

    /// Exact square root inside some multiquadratic field, if one exists.
    ///
    /// Rational inputs always succeed (possibly adjoining a new radicand).
    /// Irrational inputs succeed when the root lies in a multiquadratic
    /// extension reachable by denesting; otherwise `None`.
    pub fn sqrt(&self) -> Option<Self> {
        self.sqrt_bounded(6)
    }

    fn sqrt_bounded(&self, budget: u32) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(q) = self.to_rational() {
            return sqrt_rational(&q);
        }
        if budget == 0 {
            return None;
        }
        let g = *self.generators().iter().next_back()?;
        let (a, b) = self.split_on(g);
        let n2 = &a * &a - Scalar::int(g) * &b * &b;
        let n = n2.sqrt_bounded(budget - 1)?;
        let half = Scalar::ratio(1, 2);
        let root_g = Scalar::sqrt_int(g);
        for cand in [&a + &n, &a - &n] {
            let c2 = cand * &half;
            if c2.is_zero() {
                continue;
            }
            if let Some(c) = c2.sqrt_bounded(budget - 1) {
                let d = &b / &(Scalar::int(2) * &c);
                let y = c + d * &root_g;
                if &(&y * &y) == self {
                    return Some(y);
                }
            }
        }
        None
    }

    /// Like [`Scalar::sqrt`] but reports failure as an unsupported-field error.
    pub fn try_sqrt(&self) -> Result<Self> {
        self.sqrt().ok_or_else(|| {
            Error::Unsupported(format!("sqrt({self}) needs a nested radical"))
        })
    }

    // x = a + b*sqrt(g) with a, b free of the generator g
    fn split_on(&self, g: i64) -> (Scalar, Scalar) {
        let mut a = BTreeMap::new();
        let mut b: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (s, c) in &self.terms {
            if contains_generator(*s, g) {
                let rest = if g == -1 { -*s } else { *s / g };
                *b.entry(rest).or_insert_with(BigRational::zero) += c;
            } else {
                a.insert(*s, c.clone());
            }
        }
        (Scalar::from_map(a), Scalar::from_map(b))
    }

    /// Canonical ASCII rendering, e.g. `3/4`, `-sqrt(2)/2`, `(1+2*sqrt(5))/3`.
    pub fn to_text(&self) -> String {
        if let Some(q) = self.to_rational() {
            return rational_text(&q);
        }
        let den = self
            .terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut ordered: Vec<(i64, BigInt)> = self
            .terms
            .iter()
            .map(|(s, c)| (*s, (c * BigRational::from_integer(den.clone())).to_integer()))
            .collect();
        ordered.sort_by_key(|(s, _)| (*s != 1, s.unsigned_abs(), *s < 0));
        let mut body = String::new();
        for (i, (s, n)) in ordered.iter().enumerate() {
            let negative = n.is_negative();
            let mag = n.abs();
            if i == 0 {
                if negative {
                    body.push('-');
                }
            } else {
                body.push(if negative { '-' } else { '+' });
            }
            if *s == 1 {
                body.push_str(&mag.to_string());
            } else if mag.is_one() {
                body.push_str(&format!("sqrt({s})"));
            } else {
                body.push_str(&format!("{mag}*sqrt({s})"));
            }
        }
        if den.is_one() {
            body
        } else if ordered.len() == 1 {
            format!("{body}/{den}")
        } else {
            format!("({body})/{den}")
        }
    }

    /// True when the rendering is a sum and needs parentheses as a factor.
    pub fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }
}

pub fn rational_text(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn contains_generator(s: i64, g: i64) -> bool {
    if s == 1 {
        return false;
    }
    if g == -1 {
        s < 0
    } else {
        s.unsigned_abs().is_multiple_of(g.unsigned_abs())
    }
}

/// `-1` (when negative) and the primes dividing a square-free radicand.
pub fn radicand_primes(s: i64) -> Vec<i64> {
    let mut out = Vec::new();
    if s < 0 {
        out.push(-1);
    }
    let mut n = s.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p as i64);
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n as i64);
    }
    out
}

// sqrt(s) * sqrt(t) = k * sqrt(u) for square-free s, t
fn radical_product(s: i64, t: i64) -> (i64, i64) {
    if s == 1 {
        return (1, t);
    }
    if t == 1 {
        return (1, s);
    }
    let g = (s.unsigned_abs()).gcd(&t.unsigned_abs()) as i128;
    let u = (s as i128 / g) * (t as i128 / g);
    let u = i64::try_from(u).expect("radicand exceeds 64 bits");
    if s < 0 && t < 0 {
        (-(g as i64), u)
    } else {
        (g as i64, u)
    }
}

const TRIAL_LIMIT: u64 = 100_000;

fn is_perfect_square(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

// m = f^2 * u with u square-free; None when the factorisation is out of reach
fn square_free_split(m: &BigInt) -> Option<(BigInt, i64)> {
    let negative = m.sign() == Sign::Minus;
    let mut n = m.magnitude().clone();
    let mut f = BigUint::one();
    let mut u = BigUint::one();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let pb = BigUint::from(p);
        if &pb * &pb > n {
            break;
        }
        let mut e = 0u32;
        while (&n % &pb).is_zero() {
            n /= &pb;
            e += 1;
        }
        if e > 0 {
            f *= pb.pow(e / 2);
            if e % 2 == 1 {
                u *= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        let pb = BigUint::from(p);
        if &pb * &pb > n {
            u *= &n;
        } else if let Some(r) = is_perfect_square(&n) {
            f *= r;
        } else {
            // remaining cofactor has only prime factors above the trial bound;
            // three of them would exceed 64 bits, so a non-square below that
            // size is square-free
            let bound = BigUint::from(TRIAL_LIMIT).pow(3);
            if n < bound {
                u *= &n;
            } else {
                return None;
            }
        }
    }
    let u = i64::try_from(u.to_u64()?).ok()?;
    Some((BigInt::from(f), if negative { -u } else { u }))
}

fn sqrt_rational(q: &BigRational) -> Option<Scalar> {
    if q.is_zero() {
        return Some(Scalar::zero());
    }
    let m = q.numer() * q.denom();
    let (f, u) = square_free_split(&m)?;
    let coef = BigRational::new(f, q.denom().clone());
    Some(Scalar {
        terms: vec![(u, coef)],
    })
}

// ---------------------------------------------------------------------------
// arithmetic

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::int(1)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if let ([(1, a)], [(1, b)]) = (self.terms.as_slice(), rhs.terms.as_slice()) {
            return Scalar::rational(a + b);
        }
        let mut map: BTreeMap<i64, BigRational> = self.terms.iter().cloned().collect();
        for (s, c) in &rhs.terms {
            *map.entry(*s).or_insert_with(BigRational::zero) += c;
        }
        Scalar::from_map(map)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if let ([(1, a)], [(1, b)]) = (self.terms.as_slice(), rhs.terms.as_slice()) {
            return Scalar::rational(a * b);
        }
        let mut map: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (s, a) in &self.terms {
            for (t, b) in &rhs.terms {
                let (k, u) = radical_product(*s, *t);
                let c = a * b * BigRational::from_integer(BigInt::from(k));
                *map.entry(u).or_insert_with(BigRational::zero) += c;
            }
        }
        Scalar::from_map(map)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.checked_inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(s, c)| (*s, -c.clone())).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Ring for Scalar {
    fn from_i64(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl Field for Scalar {
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        Scalar::rational(BigRational::new(num.clone(), den.clone()))
    }

    fn from_rational(q: &BigRational) -> Self {
        Scalar::rational(q.clone())
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::rational(q)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

// ---------------------------------------------------------------------------
// tower depth

/// Bound on the number of independent square roots a computation may adjoin.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tower {
    pub max_depth: usize,
}

impl Default for Tower {
    fn default() -> Self {
        Tower { max_depth: 2 }
    }
}

impl Tower {
    pub fn new(max_depth: usize) -> Self {
        Tower { max_depth }
    }

    /// Number of independent quadratic generators needed by `values`
    /// (the rank of their radicands modulo squares).
    pub fn depth_of<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> usize {
        let mut radicands = BTreeSet::new();
        for v in values {
            radicands.extend(v.radicands());
        }
        radicand_rank(radicands.into_iter())
    }

    pub fn check<'a>(&self, values: impl IntoIterator<Item = &'a Scalar>) -> Result<()> {
        let depth = Self::depth_of(values);
        if depth > self.max_depth {
            Err(Error::Unsupported(format!(
                "field needs {depth} independent square roots, tower depth is {}",
                self.max_depth
            )))
        } else {
            Ok(())
        }
    }
}

/// GF(2) rank of the exponent vectors of square-free radicands.
pub fn radicand_rank(radicands: impl Iterator<Item = i64>) -> usize {
    let mut basis: Vec<BTreeSet<i64>> = Vec::new();
    for s in radicands {
        let mut v: BTreeSet<i64> = radicand_primes(s).into_iter().collect();
        for b in &basis {
            let pivot = *b.iter().next_back().unwrap();
            if v.contains(&pivot) {
                v = v.symmetric_difference(b).cloned().collect();
            }
        }
        if !v.is_empty() {
            basis.push(v);
            // keep pivots distinct: reduce older vectors against the new one
            let last = basis.len() - 1;
            let pivot = *basis[last].iter().next_back().unwrap();
            for i in 0..last {
                if basis[i].contains(&pivot) {
                    basis[i] = basis[i].symmetric_difference(&basis[last]).cloned().collect();
                }
            }
        }
    }
    basis.len()
}

impl super::field::Render for Scalar {
    fn render(&self) -> String {
        self.to_text()
    }

    fn compound(&self) -> bool {
        self.is_compound()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::int(n)
    }

    #[test]
    fn sqrt_squares_back() {
        for d in [2, 3, -1, -7, 12, 50, 1, 0] {
            let r = Scalar::sqrt_int(d);
            assert_eq!(&r * &r, s(d), "d={d}");
        }
        assert_eq!(Scalar::sqrt_int(12).to_text(), "2*sqrt(3)");
        assert_eq!(Scalar::sqrt_int(-4).to_text(), "2*sqrt(-1)");
    }

    #[test]
    fn imaginary_unit_products() {
        let i = Scalar::sqrt_int(-1);
        assert_eq!(&i * &i, s(-1));
        let a = Scalar::sqrt_int(-2) * Scalar::sqrt_int(-3);
        assert_eq!(a, -Scalar::sqrt_int(6));
        let b = Scalar::sqrt_int(2) * Scalar::sqrt_int(-2);
        assert_eq!(b, s(2) * &i);
    }

    #[test]
    fn inverse_in_biquadratic_field() {
        let x = s(1) + Scalar::sqrt_int(2) + Scalar::sqrt_int(3);
        let inv = x.checked_inv().unwrap();
        assert_eq!(&x * &inv, s(1));
        let z = Scalar::sqrt_int(-1) + s(2);
        assert_eq!(&z * &z.checked_inv().unwrap(), s(1));
        assert!(s(0).checked_inv().is_none());
    }

    #[test]
    fn denesting_square_roots() {
        let x = s(3) + s(2) * Scalar::sqrt_int(2);
        let r = x.sqrt().unwrap();
        assert_eq!(&r * &r, x);
        let y = s(5) + s(2) * Scalar::sqrt_int(6);
        let r = y.sqrt().unwrap();
        assert_eq!(&r * &r, y);
        // 1 + sqrt(2) is not a square in any multiquadratic field
        assert!((s(1) + Scalar::sqrt_int(2)).sqrt().is_none());
    }

    #[test]
    fn rendering() {
        assert_eq!(Scalar::ratio(3, 4).to_text(), "3/4");
        let v = (s(1) + s(2) * Scalar::sqrt_int(5)) / s(3);
        assert_eq!(v.to_text(), "(1+2*sqrt(5))/3");
        assert_eq!((-Scalar::sqrt_int(2) / s(2)).to_text(), "-sqrt(2)/2");
    }

    #[test]
    fn tower_rank() {
        assert_eq!(radicand_rank([2, 3, 6].into_iter()), 2);
        assert_eq!(radicand_rank([-1, 2, -2].into_iter()), 2);
        assert_eq!(radicand_rank([5].into_iter()), 1);
        let t = Tower::default();
        let vals = [Scalar::sqrt_int(2), Scalar::sqrt_int(3), Scalar::sqrt_int(5)];
        assert!(t.check(vals.iter()).is_err());
        assert!(t.check(vals[..2].iter()).is_ok());
    }
}
