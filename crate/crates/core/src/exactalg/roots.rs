//! Splitting denominators over the square-root tower.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::UniPoly;
use super::ratfunc::RationalFunction;
use super::scalar::{Scalar, Tower};
use crate::error::{Error, Result};

type Poly = UniPoly<Scalar>;
type QPoly = UniPoly<BigRational>;

/// A point of the projective line.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Finite(Scalar),
    Infinity,
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Point::Finite(c) => write!(f, "{c}"),
            Point::Infinity => f.write_str("infinity"),
        }
    }
}

/// Order assigned at infinity to the zero function.
pub const ZERO_ORDER: i64 = i64::MAX / 4;

/// A pole of `r` with its multiplicity, or infinity with `deg den - deg num`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleData {
    pub point: Point,
    pub order: i64,
}

/// Finite poles (sorted) followed by infinity.
pub fn find_poles(r: &RationalFunction<Scalar>, tower: &Tower) -> Result<Vec<PoleData>> {
    let mut out: Vec<PoleData> = roots(r.denom(), tower)?
        .into_iter()
        .map(|(c, m)| PoleData {
            point: Point::Finite(c),
            order: m as i64,
        })
        .collect();
    out.push(PoleData {
        point: Point::Infinity,
        order: r.order_at_infinity().unwrap_or(ZERO_ORDER),
    });
    Ok(out)
}

/// All roots of `p` with multiplicities, sorted, when `p` splits into
/// linear factors over a tower of the allowed depth.
pub fn roots(p: &Poly, tower: &Tower) -> Result<Vec<(Scalar, usize)>> {
    let mut out = Vec::new();
    for (factor, mult) in p.square_free_decomposition() {
        for c in split_square_free(&factor)? {
            out.push((c, mult));
        }
    }
    out.sort();
    let mut all: Vec<&Scalar> = out.iter().map(|(c, _)| c).collect();
    all.extend(p.coeffs());
    tower.check(all)?;
    Ok(out)
}

fn split_square_free(f: &Poly) -> Result<Vec<Scalar>> {
    let deg = f.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(Vec::new());
    }
    if deg == 1 {
        return Ok(vec![-(f.coeff(0) / f.coeff(1))]);
    }
    if deg == 2 {
        return quadratic_roots(&f.coeff(2), &f.coeff(1), &f.coeff(0));
    }
    let norm = norm_poly(f);
    let mut cands = Vec::new();
    for g in rational_factors(&norm)? {
        let g = g.map(|c| Scalar::rational(c.clone()));
        let rs = if g.degree() == Some(1) {
            vec![-(g.coeff(0) / g.coeff(1))]
        } else {
            quadratic_roots(&g.coeff(2), &g.coeff(1), &g.coeff(0))?
        };
        cands.extend(rs);
    }
    let mut found: Vec<Scalar> = Vec::new();
    for c in cands {
        if !found.contains(&c) && f.eval(&c).is_zero() {
            found.push(c);
        }
    }
    if found.len() != deg {
        return Err(Error::Unsupported(format!(
            "polynomial {} does not split over a quadratic tower",
            f.to_text("x")
        )));
    }
    Ok(found)
}

fn quadratic_roots(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<Vec<Scalar>> {
    let disc = b * b - Scalar::int(4) * a * c;
    let s = disc.try_sqrt()?;
    let two_a = Scalar::int(2) * a;
    Ok(vec![(-b + &s) / &two_a, (-b - &s) / &two_a])
}

/// Product of all Galois conjugates of `f`; a polynomial over the rationals.
fn norm_poly(f: &Poly) -> QPoly {
    let mut gens = std::collections::BTreeSet::new();
    for c in f.coeffs() {
        gens.extend(c.generators());
    }
    let mut acc = f.clone();
    for g in gens {
        let conj = acc.map(|c| c.conjugate(g));
        acc = &acc * &conj;
    }
    acc.map(|c| c.to_rational().expect("norm has rational coefficients"))
}

/// Factors of a square-free rational polynomial into linear and quadratic
/// pieces; an irreducible piece of degree three or more is unsupported.
pub fn rational_factors(f: &QPoly) -> Result<Vec<QPoly>> {
    let mut rest = primitive_integer(f);
    let mut out = Vec::new();
    for r in rational_roots(&rest)? {
        let lin = QPoly::linear_root(r);
        while let Some(qt) = rest.exact_div(&lin) {
            rest = qt;
        }
        out.push(lin);
    }
    rest = primitive_integer(&rest);
    while rest.degree().unwrap_or(0) >= 3 {
        match quadratic_factor(&rest)? {
            Some(h) => {
                rest = primitive_integer(&rest.exact_div(&h).unwrap());
                out.push(h.monic());
            }
            None => {
                return Err(Error::Unsupported(format!(
                    "irreducible factor of degree {} in {}",
                    rest.degree().unwrap(),
                    f.to_text("x")
                )))
            }
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push(rest.monic());
    }
    Ok(out)
}

fn primitive_integer(f: &QPoly) -> QPoly {
    if f.is_zero() {
        return f.clone();
    }
    let l = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| (c * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if f.lc().is_negative() { -1 } else { 1 };
    QPoly::new(
        ints.into_iter()
            .map(|c| BigRational::from_integer(c * sign / &g))
            .collect(),
    )
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    let m = n.to_u64().filter(|&v| v <= 1_000_000_000_000).ok_or_else(|| {
        Error::Unsupported("coefficient too large for exact root search".into())
    })?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            small.push(BigInt::from(d));
            if d * d != m {
                large.push(BigInt::from(m / d));
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Ok(small)
}

/// Rational roots of an integer-coefficient polynomial (each once).
pub fn rational_roots(f: &QPoly) -> Result<Vec<BigRational>> {
    let mut out = Vec::new();
    let Some(low) = f.low_order() else {
        return Ok(out);
    };
    if low > 0 {
        out.push(BigRational::zero());
    }
    if f.degree().unwrap() == low {
        return Ok(out);
    }
    let f = primitive_integer(&QPoly::new(f.coeffs()[low..].to_vec()));
    let a0 = f.coeff(0).to_integer();
    let an = f.lc().to_integer();
    for p in divisors(&a0)? {
        for qd in divisors(&an)? {
            for s in [1, -1] {
                let c = BigRational::new(&p * BigInt::from(s), qd.clone());
                if !out.contains(&c) && f.eval(&c).is_zero() {
                    out.push(c);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

// Kronecker's method restricted to quadratic factors.
fn quadratic_factor(f: &QPoly) -> Result<Option<QPoly>> {
    let pts = [0i64, 1, -1];
    let vals: Vec<BigInt> = pts
        .iter()
        .map(|&t| f.eval(&BigRational::from_integer(t.into())).to_integer())
        .collect();
    let mut opts: Vec<Vec<BigInt>> = Vec::new();
    for v in &vals {
        let ds = divisors(v)?;
        opts.push(ds.iter().flat_map(|d| [d.clone(), -d]).collect());
    }
    for h0 in &opts[0] {
        for h1 in &opts[1] {
            for hm in &opts[2] {
                // h(t) = a t^2 + b t + c through (0,h0), (1,h1), (-1,hm)
                let c = h0.clone();
                let a2: BigInt = h1 + hm - &c * 2;
                if a2.is_zero() || a2.is_odd() {
                    continue;
                }
                let b2: BigInt = h1 - hm;
                if b2.is_odd() {
                    continue;
                }
                let a: BigInt = a2 / 2;
                if a.is_negative() {
                    continue;
                }
                let h = QPoly::new(vec![
                    BigRational::from_integer(c),
                    BigRational::from_integer(b2 / 2),
                    BigRational::from_integer(a),
                ]);
                if f.exact_div(&h).is_some() {
                    return Ok(Some(h));
                }
            }
        }
    }
    Ok(None)
}

/// `f = poly + sum coef/(x - c)^k`, keyed by `(c, k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractions {
    pub poly: Poly,
    pub terms: BTreeMap<(Scalar, u32), Scalar>,
}

impl PartialFractions {
    pub fn recombine(&self) -> RationalFunction<Scalar> {
        let mut acc = RationalFunction::from_poly(self.poly.clone());
        for ((c, k), a) in &self.terms {
            acc = &acc + &RationalFunction::inv_linear_pow(c, *k).scale(a);
        }
        acc
    }
}

pub fn partial_fractions(f: &RationalFunction<Scalar>, tower: &Tower) -> Result<PartialFractions> {
    let (poly, rem) = f.numer().div_rem(f.denom());
    let proper = RationalFunction::new(rem, f.denom().clone());
    let mut terms = BTreeMap::new();
    for (c, m) in roots(f.denom(), tower)? {
        let (val, coeffs) = super::laurent::series_at(&proper, &Point::Finite(c.clone()), m);
        for (j, a) in coeffs.into_iter().enumerate() {
            let k = -(val + j as i64);
            if k >= 1 && !a.is_zero() {
                terms.insert((c.clone(), k as u32), a);
            }
        }
    }
    Ok(PartialFractions { poly, terms })
}
