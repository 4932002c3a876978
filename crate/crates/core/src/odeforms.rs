//! Equation forms and the transformations between them: Riccati
//! `v' = a0 + a1 v + a2 v^2`, reduced Riccati `w' = r - w^2`, linear
//! `y'' + b1 y' + b0 y = 0`, reduced linear `xi'' = rho xi`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{BiPoly, Scalar};
use crate::RatFunc;
#[cfg(test)]
use crate::Poly;

#[derive(Clone, Debug, PartialEq)]
pub struct SecondOrderODE {
    pub b1: RatFunc,
    pub b0: RatFunc,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReducedODE {
    pub rho: RatFunc,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RiccatiGeneral {
    pub a0: RatFunc,
    pub a1: RatFunc,
    pub a2: RatFunc,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RiccatiReduced {
    pub r: RatFunc,
}

/// `exp(coeff * integral(integrand dx))`, never evaluated in closed form.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpIntegral {
    pub coeff: Scalar,
    pub integrand: RatFunc,
}

impl ExpIntegral {
    /// Logarithmic derivative, the only operation ever applied to it.
    pub fn log_derivative(&self) -> RatFunc {
        self.integrand.scale(&self.coeff)
    }
}

/// `v = alpha + beta w`
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSubstitution {
    pub alpha: RatFunc,
    pub beta: RatFunc,
}

impl RiccatiGeneral {
    pub fn new(a0: RatFunc, a1: RatFunc, a2: RatFunc) -> Result<Self> {
        if a2.is_zero() {
            return Err(Error::NotRiccati("a2 vanishes (linear equation)".into()));
        }
        Ok(RiccatiGeneral { a0, a1, a2 })
    }

    /// `v' - (a0 + a1 v + a2 v^2)` for a rational `v`.
    pub fn residual(&self, v: &RatFunc) -> RatFunc {
        &v.derivative() - &(&(&self.a0 + &(&self.a1 * v)) + &(&(&self.a2 * v) * v))
    }
}

impl RiccatiReduced {
    /// `w' + w^2 - r` for a rational `w`.
    pub fn residual(&self, w: &RatFunc) -> RatFunc {
        &(&w.derivative() + &(w * w)) - &self.r
    }
}

/// The affine change `v = alpha + beta w` taking the general Riccati
/// equation to `w' = r - w^2`.
pub fn transform_t(e: &RiccatiGeneral) -> (RiccatiReduced, AffineSubstitution) {
    let two = RatFunc::constant(Scalar::int(2));
    let a2 = &e.a2;
    let alpha = -(&(&a2.derivative() / &(&(&two * a2) * a2)) + &(&e.a1 / &(&two * a2)));
    let beta = -(RatFunc::one() / a2.clone());
    let num = &(&(&e.a0 + &(&e.a1 * &alpha)) + &(&(a2 * &alpha) * &alpha)) - &alpha.derivative();
    let r = &num / &beta;
    (RiccatiReduced { r }, AffineSubstitution { alpha, beta })
}

/// Inverse of [`transform_t`]: rebuild the general equation from `r` and the
/// substitution.
pub fn untransform_t(r: &RiccatiReduced, s: &AffineSubstitution) -> RiccatiGeneral {
    // w = (v - alpha)/beta; w' = r - w^2 gives v' = alpha' + beta' w + beta (r - w^2)
    let (al, be) = (&s.alpha, &s.beta);
    let inv_b = RatFunc::one() / be.clone();
    let dal = al.derivative();
    let dbe = be.derivative();
    // v' = dal + dbe (v - al)/be + be r - (v - al)^2 / be
    let a2 = -inv_b.clone();
    let a1 = &(&dbe * &inv_b) + &(&(al * &inv_b) * &RatFunc::constant(Scalar::int(2)));
    let a0 = &(&(&dal - &(&(&dbe * al) * &inv_b)) + &(be * &r.r)) - &(&(al * al) * &inv_b);
    RiccatiGeneral { a0, a1, a2 }
}

/// `v = -(1/a2) y'/y`, giving `y'' + b1 y' + b0 y = 0`.
pub fn transform_b(e: &RiccatiGeneral) -> SecondOrderODE {
    let b1 = -(&e.a1 + &(&e.a2.derivative() / &e.a2));
    let b0 = &e.a0 * &e.a2;
    SecondOrderODE { b1, b0 }
}

/// `y = xi exp(-1/2 integral b1)`, giving `xi'' = rho xi`.
pub fn transform_s(e: &SecondOrderODE) -> (ReducedODE, ExpIntegral) {
    let rho = &(&(&(&e.b1 * &e.b1) / &RatFunc::constant(Scalar::int(4)))
        + &e.b1.derivative().scale(&Scalar::ratio(1, 2)))
        - &e.b0;
    (
        ReducedODE { rho },
        ExpIntegral {
            coeff: Scalar::ratio(-1, 2),
            integrand: e.b1.clone(),
        },
    )
}

/// `w = xi'/xi`
pub fn transform_r(e: &ReducedODE) -> RiccatiReduced {
    RiccatiReduced { r: e.rho.clone() }
}

/// Planar polynomial field `P d/dx + Q d/dy`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarVectorField {
    pub p: BiPoly,
    pub q: BiPoly,
}

impl PlanarVectorField {
    pub fn new(p: BiPoly, q: BiPoly) -> Result<Self> {
        if p.is_zero() && q.is_zero() {
            return Err(Error::Degenerate("both components vanish".into()));
        }
        Ok(PlanarVectorField { p, q })
    }

    pub fn apply(&self, f: &BiPoly) -> BiPoly {
        crate::exactalg::bipoly::apply_field(&self.p, &self.q, f)
    }

    pub fn divergence(&self) -> BiPoly {
        &self.p.dx() + &self.q.dy()
    }

    pub fn degree(&self) -> u32 {
        self.p
            .total_degree()
            .unwrap_or(0)
            .max(self.q.total_degree().unwrap_or(0))
    }

    /// Field of `w' = r - w^2` written as `q d/dx + (p - q w^2) d/dw` with
    /// `r = p/q`.
    pub fn reduced_riccati(r: &RatFunc) -> Self {
        let p = BiPoly::from_x_poly(r.numer());
        let q = BiPoly::from_x_poly(r.denom());
        let w2 = &BiPoly::y() * &BiPoly::y();
        PlanarVectorField {
            p: q.clone(),
            q: &p - &(&q * &w2),
        }
    }
}

/// Which variable plays the role of the base of the foliation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    X,
    Y,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Foliation {
    pub base: Base,
    pub riccati: RiccatiGeneral,
    /// Present when the equation already has the shape `w' = r - w^2`.
    pub reduced: Option<RiccatiReduced>,
}

/// The Riccati equation `dy/dx = Q/P` (or `dx/dy = P/Q`) of a field whose
/// base component depends on the base variable only.
pub fn foliation_of(v: &PlanarVectorField) -> Result<Foliation> {
    match riccati_along(&v.p, &v.q) {
        Ok(riccati) => Ok(finish(Base::X, riccati)),
        Err(e) => {
            let swapped = riccati_along(&v.q.swap_xy(), &v.p.swap_xy());
            match swapped {
                Ok(riccati) => Ok(finish(Base::Y, riccati)),
                Err(_) => Err(e),
            }
        }
    }
}

fn finish(base: Base, riccati: RiccatiGeneral) -> Foliation {
    let reduced = (riccati.a1.is_zero() && riccati.a2 == -RatFunc::one()).then(|| RiccatiReduced {
        r: riccati.a0.clone(),
    });
    Foliation {
        base,
        riccati,
        reduced,
    }
}

// base component `b(x)`, fiber component polynomial in y of degree <= 2
fn riccati_along(base: &BiPoly, fiber: &BiPoly) -> Result<RiccatiGeneral> {
    let b = base
        .as_x_poly()
        .filter(|b| !b.is_zero())
        .ok_or_else(|| Error::NotRiccati("base component mixes variables".into()))?;
    let fy = fiber.as_y_poly();
    if fy.degree().unwrap_or(0) > 2 {
        return Err(Error::NotRiccati(format!(
            "fiber degree {} exceeds 2",
            fy.degree().unwrap()
        )));
    }
    let c = |k: usize| RatFunc::new(fy.coeff(k), b.clone());
    RiccatiGeneral::new(c(0), c(1), c(2))
}

/// Convenience: the reduced Riccati field for a polynomial/rational `r`.
pub fn vric_field(r: &RatFunc) -> PlanarVectorField {
    PlanarVectorField::reduced_riccati(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&n| Scalar::int(n)).collect())
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(p(n), p(d))
    }

    fn k(n: i64) -> RatFunc {
        RatFunc::constant(Scalar::int(n))
    }

    #[test]
    fn already_reduced() {
        let r0 = rf(&[1, 0, 3], &[2, 1]);
        let (red, sub) = transform_t(&RiccatiGeneral::new(r0.clone(), k(0), k(-1)).unwrap());
        assert_eq!(red.r, r0);
        assert_eq!(sub.alpha, k(0));
        assert_eq!(sub.beta, k(1));
    }

    #[test]
    fn hermite_row() {
        // a0 = 2n, a1 = 2x, a2 = 1 with n = 3
        let e = RiccatiGeneral::new(k(6), rf(&[0, 2], &[1]), k(1)).unwrap();
        assert_eq!(transform_t(&e).0.r, rf(&[-7, 0, 1], &[1]));
    }

    #[test]
    fn b_formula() {
        let e = RiccatiGeneral::new(k(1), RatFunc::x(), RatFunc::x()).unwrap();
        let s = transform_b(&e);
        assert_eq!(s.b1, rf(&[-1, 0, -1], &[0, 1]));
        assert_eq!(s.b0, RatFunc::x());
    }

    #[test]
    fn bessel_reduction() {
        // n = 2: rho = (4n^2 - 1)/(4x^2) - 1
        let e = SecondOrderODE {
            b1: rf(&[1], &[0, 1]),
            b0: rf(&[-4, 0, 1], &[0, 0, 1]),
        };
        let rho = transform_s(&e).0.rho;
        assert_eq!(rho, &rf(&[15], &[0, 0, 4]) - &k(1));
    }

    #[test]
    fn kummer_to_whittaker() {
        // x y'' + (c - x) y' - a y = 0 with a = 1, c = 3: kappa = c/2 - a = 1/2, mu = c/2 - 1/2 = 1
        let e = SecondOrderODE {
            b1: rf(&[3, -1], &[0, 1]),
            b0: rf(&[-1], &[0, 1]),
        };
        let rho = transform_s(&e).0.rho;
        let kappa = Scalar::ratio(1, 2);
        let mu = Scalar::int(1);
        let w = &(&RatFunc::constant(Scalar::ratio(1, 4))
            - &RatFunc::new(Poly::constant(kappa), p(&[0, 1])))
            + &RatFunc::new(
                Poly::constant(Scalar::int(4) * &mu * &mu - Scalar::int(1)),
                p(&[0, 0, 4]),
            );
        assert_eq!(rho, w);
    }

    #[test]
    fn s1_foliation() {
        // x' = x, y' = e x + l y + b20 x^2 + b11 x y + b02 y^2
        let (e, l, b20, b11, b02) = (2, 3, 5, 7, 11);
        let q = BiPoly::from_terms([
            ((1, 0), Scalar::int(e)),
            ((0, 1), Scalar::int(l)),
            ((2, 0), Scalar::int(b20)),
            ((1, 1), Scalar::int(b11)),
            ((0, 2), Scalar::int(b02)),
        ]);
        let f = foliation_of(&PlanarVectorField::new(BiPoly::x(), q).unwrap()).unwrap();
        assert_eq!(f.base, Base::X);
        assert_eq!(f.riccati.a0, rf(&[e, b20], &[1]));
        assert_eq!(f.riccati.a1, rf(&[l, b11], &[0, 1]));
        assert_eq!(f.riccati.a2, rf(&[b02], &[0, 1]));
    }

    #[test]
    fn vric_round_trip() {
        let r = rf(&[-1, 0, 1], &[1]);
        let f = foliation_of(&vric_field(&r)).unwrap();
        assert_eq!(f.reduced, Some(RiccatiReduced { r }));
    }

    #[test]
    fn cubic_fiber_is_not_riccati() {
        let y3 = BiPoly::monomial(Scalar::int(1), 0, 3);
        let v = PlanarVectorField::new(y3, BiPoly::one()).unwrap();
        assert!(matches!(foliation_of(&v), Err(Error::NotRiccati(_))));
    }
}
