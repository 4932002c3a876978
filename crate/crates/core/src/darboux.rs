//! Invariant curves, exponential factors and Darboux first integrals and
//! integrating factors of planar polynomial fields.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::bipoly::{birat_const, birat_dx, birat_dy, birat_from, birat_y, BiRat};
use crate::exactalg::linsolve::linear_solve;
use crate::exactalg::{BiPoly, Scalar, Tower};
use crate::kovacic::{case1_all, KovacicResult};
use crate::odeforms::{foliation_of, Base, PlanarVectorField};
use crate::RatFunc;

/// `f = 0` with `X(f) = K f`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicCurve {
    pub f: BiPoly,
    pub cofactor: BiPoly,
}

impl AlgebraicCurve {
    /// `None` when `f` is not invariant under `x`.
    pub fn new(x: &PlanarVectorField, f: BiPoly) -> Option<Self> {
        let cofactor = cofactor_of(x, &f)?;
        Some(AlgebraicCurve { f, cofactor })
    }
}

/// `exp(g/h)` with `X(g/h) = K~`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentialFactor {
    pub g: BiPoly,
    pub h: BiPoly,
    pub cofactor: BiPoly,
}

impl ExponentialFactor {
    /// `None` unless `X(g/h)` is a polynomial and, for non-constant `h`,
    /// `h = 0` is itself invariant.
    pub fn new(x: &PlanarVectorField, g: BiPoly, h: BiPoly) -> Option<Self> {
        if h.is_zero() {
            return None;
        }
        if !h.is_constant() {
            cofactor_of(x, &h)?;
        }
        let num = &(&x.apply(&g) * &h) - &(&g * &x.apply(&h));
        let cofactor = num.exact_div(&(&h * &h))?;
        Some(ExponentialFactor { g, h, cofactor })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    FirstIntegral,
    IntegratingFactor,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::FirstIntegral => "first integral",
            Target::IntegratingFactor => "integrating factor",
        })
    }
}

/// `prod f_i^lambda_i * prod exp(g_j/h_j)^mu_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct DarbouxObject {
    pub curves: Vec<AlgebraicCurve>,
    pub expfactors: Vec<ExponentialFactor>,
    pub lambdas: Vec<Scalar>,
    pub exp_lambdas: Vec<Scalar>,
    pub kind: Target,
}

impl DarbouxObject {
    /// `sum lambda_i K_i + sum mu_j L_j` (plus `div X` for an integrating
    /// factor) is identically zero.
    pub fn verify(&self, x: &PlanarVectorField) -> bool {
        let mut acc = match self.kind {
            Target::FirstIntegral => BiPoly::zero(),
            Target::IntegratingFactor => x.divergence(),
        };
        for (c, l) in self.curves.iter().zip(&self.lambdas) {
            acc = &acc + &c.cofactor.scale(l);
        }
        for (e, l) in self.expfactors.iter().zip(&self.exp_lambdas) {
            acc = &acc + &e.cofactor.scale(l);
        }
        acc.is_zero()
    }
}

/// Cofactor `K = X(f)/f`, if `f` is invariant.
pub fn cofactor_of(x: &PlanarVectorField, f: &BiPoly) -> Option<BiPoly> {
    if f.is_zero() {
        return None;
    }
    let k = x.apply(f).exact_div(f)?;
    let bound = x.degree().saturating_sub(1);
    if k.total_degree().is_some_and(|d| d > bound) {
        return None;
    }
    Some(k)
}

/// `X` acting on `Q(x)(y)`.
pub fn apply_rational(x: &PlanarVectorField, f: &BiRat) -> BiRat {
    &(&birat_from(&x.p) * &birat_dx(f)) + &(&birat_from(&x.q) * &birat_dy(f))
}

/// Cofactor of a curve `f(x, y) = 0` with `f` polynomial in `y` over
/// `Q(x)`; the cofactor must be polynomial in `y` (its coefficients may
/// be rational in `x`).
pub fn rational_cofactor_of(x: &PlanarVectorField, f: &BiRat) -> Option<BiRat> {
    if f.is_zero() {
        return None;
    }
    let k = &apply_rational(x, f) / f;
    k.is_poly().then_some(k)
}

/// Solves `sum lambda_i K_i + sum mu_j L_j (+ div X) = 0` over the scalars.
pub fn darboux_combination(
    curves: &[AlgebraicCurve],
    expfactors: &[ExponentialFactor],
    x: &PlanarVectorField,
    target: Target,
) -> Option<DarbouxObject> {
    let cofactors: Vec<&BiPoly> = curves
        .iter()
        .map(|c| &c.cofactor)
        .chain(expfactors.iter().map(|e| &e.cofactor))
        .collect();
    let div = x.divergence();
    let monomials: BTreeSet<(u32, u32)> = cofactors
        .iter()
        .flat_map(|k| k.terms().keys().copied())
        .chain(div.terms().keys().copied())
        .collect();
    let a: Vec<Vec<Scalar>> = monomials
        .iter()
        .map(|&(i, j)| cofactors.iter().map(|k| k.coeff(i, j)).collect())
        .collect();
    let rhs: Vec<Scalar> = monomials
        .iter()
        .map(|&(i, j)| match target {
            Target::FirstIntegral => Scalar::zero(),
            Target::IntegratingFactor => -div.coeff(i, j),
        })
        .collect();
    let lambdas = if cofactors.is_empty() {
        match target {
            Target::IntegratingFactor if div.is_zero() => Vec::new(),
            _ => return None,
        }
    } else if a.is_empty() {
        // every cofactor and the divergence vanish
        match target {
            Target::FirstIntegral => {
                let mut v = vec![Scalar::zero(); cofactors.len()];
                v[0] = Scalar::one();
                v
            }
            Target::IntegratingFactor => vec![Scalar::zero(); cofactors.len()],
        }
    } else {
        let sol = linear_solve(&a, &rhs)?;
        match target {
            Target::FirstIntegral => sol.nullspace.into_iter().next()?,
            Target::IntegratingFactor => sol.particular,
        }
    };
    let (l, e) = lambdas.split_at(curves.len());
    let obj = DarbouxObject {
        curves: curves.to_vec(),
        expfactors: expfactors.to_vec(),
        lambdas: l.to_vec(),
        exp_lambdas: e.to_vec(),
        kind: target,
    };
    debug_assert!(obj.verify(x));
    Some(obj)
}

/// A formal Darboux function `prod f_i^l_i * exp(sum c_j int(g_j dx))`
/// with `f_i` rational in `(x, y)`. Integrals stay unevaluated; the only
/// rule used is `d/dx int(g dx) = g`.
#[derive(Clone, Debug, PartialEq)]
pub struct DarbouxFunction {
    pub factors: Vec<(BiRat, Scalar)>,
    pub integrals: Vec<(Scalar, RatFunc)>,
}

impl DarbouxFunction {
    /// `X(F)/F`.
    pub fn log_derivative(&self, x: &PlanarVectorField) -> BiRat {
        let mut acc = BiRat::zero();
        for (f, l) in &self.factors {
            let t = &apply_rational(x, f) / f;
            acc = &acc + &t.scale(&RatFunc::constant(l.clone()));
        }
        let base = birat_from(&x.p);
        for (c, g) in &self.integrals {
            acc = &acc + &(&base * &birat_const(&g.scale(c)));
        }
        acc
    }

    pub fn is_first_integral(&self, x: &PlanarVectorField) -> bool {
        self.log_derivative(x).is_zero()
    }

    pub fn is_integrating_factor(&self, x: &PlanarVectorField) -> bool {
        (&self.log_derivative(x) + &birat_from(&x.divergence())).is_zero()
    }

    /// Text with `x` and `vy` as the variables.
    pub fn to_text(&self, vy: &str) -> String {
        let mut num = Vec::new();
        let mut den = Vec::new();
        for (c, g) in &self.integrals {
            let arg = g.scale(c);
            num.push(format!("exp(int({}))", arg.to_text("x")));
        }
        for (f, l) in &self.factors {
            let base = format!("({})", f.to_text(vy));
            let neg = l.to_rational().is_some_and(|q| q < num_rational::BigRational::zero());
            let e = if neg { -l.clone() } else { l.clone() };
            let term = if e.is_one() {
                base
            } else if e.is_rational() && !e.to_text().contains('/') && !e.to_text().starts_with('-') {
                format!("{base}^{}", e.to_text())
            } else {
                format!("{base}^({})", e.to_text())
            };
            if neg {
                den.push(term);
            } else {
                num.push(term);
            }
        }
        let n = if num.is_empty() { "1".to_string() } else { num.join("*") };
        match den.len() {
            0 => n,
            1 => format!("{n}/{}", den[0]),
            _ => format!("{n}/({})", den.join("*")),
        }
    }
}

/// `-y + w1(x)` in `Q(x)(y)`.
fn minus_y_plus(w: &RatFunc) -> BiRat {
    &birat_const(w) - &birat_y()
}

fn reduced_r(vf: &PlanarVectorField) -> Result<RatFunc> {
    let fol = foliation_of(vf)?;
    fol.reduced
        .filter(|_| fol.base == Base::X)
        .map(|r| r.r)
        .ok_or_else(|| Error::NotRiccati("field is not of the form q d/dx + (p - q w^2) d/dw".into()))
}

/// `mu = exp(-2 int w1) / (-w + w1)^2` for a solution `w1` of the reduced
/// Riccati equation of `vf`, divided by the base component `q(x)` when the
/// field carries one.
pub fn integrating_factor_from_solution(w1: &RatFunc, vf: &PlanarVectorField) -> Result<DarbouxFunction> {
    let r = reduced_r(vf)?;
    if !(&(&w1.derivative() + &(w1 * w1)) - &r).is_zero() {
        return Err(Error::NotASolution(format!(
            "{} does not solve w' = {} - w^2",
            w1.to_text("x"),
            r.to_text("x")
        )));
    }
    let mut factors = vec![(minus_y_plus(w1), Scalar::int(-2))];
    if !vf.p.is_constant() {
        factors.push((birat_from(&vf.p), Scalar::int(-1)));
    }
    Ok(DarbouxFunction {
        factors,
        integrals: vec![(Scalar::int(-2), w1.clone())],
    })
}

/// `H = (-w + w2)/(-w + w1) * exp(int (w2 - w1))` for two solutions of the
/// same reduced Riccati equation.
pub fn first_integral_two_solutions(w1: &RatFunc, w2: &RatFunc) -> Result<DarbouxFunction> {
    if w1 == w2 {
        return Err(Error::Degenerate("the two solutions coincide".into()));
    }
    let r1 = &w1.derivative() + &(w1 * w1);
    let r2 = &w2.derivative() + &(w2 * w2);
    if r1 != r2 {
        return Err(Error::NotASolution(format!(
            "{} and {} solve different equations",
            w1.to_text("x"),
            w2.to_text("x")
        )));
    }
    Ok(DarbouxFunction {
        factors: vec![(minus_y_plus(w2), Scalar::one()), (minus_y_plus(w1), -Scalar::one())],
        integrals: vec![(Scalar::one(), w2 - w1)],
    })
}

/// `H = (1/g^2) ((-n g w - g')/(-n g w + g'))^n`, in `Q(x)(w)`.
pub fn rational_first_integral_cyclic(g: &RatFunc, n: u32) -> Result<BiRat> {
    if g.is_zero() || n == 0 {
        return Err(Error::Invalid("need g != 0 and n >= 1".into()));
    }
    let ng = birat_const(&g.scale(&Scalar::int(n as i64)));
    let dg = birat_const(&g.derivative());
    let ngw = &ng * &birat_y();
    let ratio = &(&(-&ngw) - &dg) / &(&(-&ngw) + &dg);
    let g2 = birat_const(&(g * g));
    Ok(&ratio.pow(n as i32) / &g2)
}

/// `H = ((-w + w2)/(-w + w1))^n * g2/g1` with `w_i = g_i'/(n g_i)`, for
/// solutions `g_1^(1/n)`, `g_2^(1/n)` of `xi'' = rho xi`.
pub fn rational_first_integral_radicals(g1: &RatFunc, g2: &RatFunc, n: u32) -> Result<BiRat> {
    if g1.is_zero() || g2.is_zero() || n == 0 {
        return Err(Error::Invalid("need g1, g2 != 0 and n >= 1".into()));
    }
    let nn = Scalar::int(n as i64);
    let w1 = &g1.derivative() / &g1.scale(&nn);
    let w2 = &g2.derivative() / &g2.scale(&nn);
    let ratio = &minus_y_plus(&w2) / &minus_y_plus(&w1);
    Ok(&ratio.pow(n as i32) * &birat_const(&(g2 / g1)))
}

/// Type of first integral attached to a Kovacic outcome.
#[derive(Clone, Debug, PartialEq)]
pub enum FirstIntegralType {
    /// Two rational Riccati solutions.
    Darboux { w1: RatFunc, w2: RatFunc },
    /// Exactly one rational Riccati solution.
    DarbouxSchwarzChristoffel { w1: RatFunc },
    Hyperelliptic,
    Rational,
    None,
}

impl FirstIntegralType {
    pub fn label(&self) -> &'static str {
        match self {
            FirstIntegralType::Darboux { .. } => "Darboux",
            FirstIntegralType::DarbouxSchwarzChristoffel { .. } => "Darboux-Schwarz-Christoffel",
            FirstIntegralType::Hyperelliptic => "hyperelliptic",
            FirstIntegralType::Rational => "rational",
            FirstIntegralType::None => "none",
        }
    }
}

pub fn classify_first_integral(r: &RatFunc, res: &KovacicResult, tower: &Tower) -> Result<FirstIntegralType> {
    Ok(match res {
        KovacicResult::Case1 { .. } => {
            let sols: Vec<RatFunc> = case1_all(r, tower)?
                .iter()
                .filter_map(KovacicResult::riccati_solution)
                .collect();
            match sols.as_slice() {
                [] => {
                    let w1 = res.riccati_solution().expect("Case 1 carries a solution");
                    FirstIntegralType::DarbouxSchwarzChristoffel { w1 }
                }
                [w1] => FirstIntegralType::DarbouxSchwarzChristoffel { w1: w1.clone() },
                [w1, w2, ..] => FirstIntegralType::Darboux {
                    w1: w1.clone(),
                    w2: w2.clone(),
                },
            }
        }
        KovacicResult::Case2 { .. } => FirstIntegralType::Hyperelliptic,
        KovacicResult::Case3 { .. } => FirstIntegralType::Rational,
        KovacicResult::Case4 => FirstIntegralType::None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::odeforms::vric_field;
    use crate::Poly;

    fn s(n: i64) -> Scalar {
        Scalar::int(n)
    }

    fn poly(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&n| s(n)).collect())
    }

    fn field(p: BiPoly, q: BiPoly) -> PlanarVectorField {
        PlanarVectorField::new(p, q).unwrap()
    }

    #[test]
    fn radial_field_line() {
        let x = field(BiPoly::x(), BiPoly::y());
        let f = &BiPoly::y() - &BiPoly::x();
        assert_eq!(cofactor_of(&x, &f), Some(BiPoly::one()));
        assert_eq!(cofactor_of(&x, &BiPoly::one()), Some(BiPoly::zero()));
        let g = &(&BiPoly::y() * &BiPoly::y()) + &BiPoly::one();
        assert_eq!(cofactor_of(&x, &g), None);
    }

    #[test]
    fn vric_curve_cofactor() {
        // r = x^2 - 1, w1 = -x; f = -w - x, K = -(w - x)
        let r = RatFunc::from_poly(poly(&[-1, 0, 1]));
        let x = vric_field(&r);
        let f = &(-&BiPoly::y()) - &BiPoly::x();
        let k = cofactor_of(&x, &f).unwrap();
        assert_eq!(k, &BiPoly::x() - &BiPoly::y());
    }

    #[test]
    fn lemma_exponents() {
        let r = RatFunc::from_poly(poly(&[-1, 0, 1]));
        let x = vric_field(&r);
        let f1 = AlgebraicCurve::new(&x, &(-&BiPoly::y()) - &BiPoly::x()).unwrap();
        // F1 = exp(-int w1) = exp(x^2/2)
        let g = BiPoly::monomial(Scalar::ratio(1, 2), 2, 0);
        let e1 = ExponentialFactor::new(&x, g, BiPoly::one()).unwrap();
        assert_eq!(e1.cofactor, BiPoly::x());
        let obj = darboux_combination(&[f1], &[e1], &x, Target::IntegratingFactor).unwrap();
        assert_eq!(obj.lambdas, vec![s(-2)]);
        assert_eq!(obj.exp_lambdas, vec![s(2)]);
        assert!(obj.verify(&x));
    }

    #[test]
    fn first_integral_combinations() {
        let x = field(BiPoly::x(), -&BiPoly::y());
        let c1 = AlgebraicCurve::new(&x, BiPoly::x()).unwrap();
        let c2 = AlgebraicCurve::new(&x, BiPoly::y()).unwrap();
        assert_eq!(c1.cofactor, -&c2.cofactor);
        let obj = darboux_combination(&[c1, c2], &[], &x, Target::FirstIntegral).unwrap();
        assert_eq!(obj.lambdas, vec![s(1), s(1)]);

        let y = field(BiPoly::one(), BiPoly::zero());
        let c = AlgebraicCurve::new(&y, BiPoly::y()).unwrap();
        let obj = darboux_combination(&[c], &[], &y, Target::FirstIntegral).unwrap();
        assert_eq!(obj.lambdas, vec![s(1)]);
    }

    #[test]
    fn integrating_factors_from_solutions() {
        let r = RatFunc::from_poly(poly(&[-1, 0, 1]));
        let vf = vric_field(&r);
        let mu = integrating_factor_from_solution(&-RatFunc::x(), &vf).unwrap();
        assert!(mu.is_integrating_factor(&vf));
        assert_eq!(mu.to_text("w"), "exp(int(2*x))/(-w + (-x))^2");

        let one = RatFunc::one();
        let vf = vric_field(&one);
        assert!(integrating_factor_from_solution(&one, &vf).unwrap().is_integrating_factor(&vf));
        assert!(matches!(
            integrating_factor_from_solution(&RatFunc::zero(), &vf),
            Err(Error::NotASolution(_))
        ));

        // r = 2/x^2 with w1 = 2/x; the field is x^2 d/dx + (2 - x^2 w^2) d/dw
        let x2 = poly(&[0, 0, 1]);
        let r = RatFunc::new(poly(&[2]), x2.clone());
        let w1 = RatFunc::new(poly(&[2]), poly(&[0, 1]));
        let vf = vric_field(&r);
        let mu = integrating_factor_from_solution(&w1, &vf).unwrap();
        assert!(mu.is_integrating_factor(&vf));
        assert_eq!(mu.factors.len(), 2);
    }

    #[test]
    fn two_solution_first_integral() {
        let one = RatFunc::one();
        let h = first_integral_two_solutions(&one, &-one.clone()).unwrap();
        assert!(h.is_first_integral(&vric_field(&one)));
        assert_eq!(h.to_text("w"), "exp(int(-2))*(-w - 1)/(-w + 1)");
        assert!(matches!(first_integral_two_solutions(&one, &one), Err(Error::Degenerate(_))));
        assert!(matches!(
            first_integral_two_solutions(&one, &RatFunc::zero()),
            Err(Error::NotASolution(_))
        ));
    }

    #[test]
    fn cyclic_formula_shape() {
        let x = RatFunc::x();
        let h = rational_first_integral_cyclic(&x, 1).unwrap();
        // (1/x^2)(-x w - 1)/(-x w + 1)
        let w = birat_y();
        let xc = birat_const(&x);
        let expect = &(&(&(-&(&xc * &w)) - &BiRat::one()) / &(&(-&(&xc * &w)) + &BiRat::one()))
            / &birat_const(&(&x * &x));
        assert_eq!(h, expect);
        let h2 = rational_first_integral_cyclic(&x, 2).unwrap();
        let two = birat_const(&x.scale(&s(2)));
        let base = &(&(-&(&two * &w)) - &BiRat::one()) / &(&(-&(&two * &w)) + &BiRat::one());
        assert_eq!(h2, &base.pow(2) / &birat_const(&(&x * &x)));
    }

    #[test]
    fn radical_first_integral_is_invariant() {
        // rho = -3/(16 x^2): xi = x^(3/4), x^(1/4)
        let rho = RatFunc::new(Poly::constant(Scalar::ratio(-3, 16)), poly(&[0, 0, 1]));
        let vf = vric_field(&rho);
        let g1 = RatFunc::from_poly(poly(&[0, 0, 0, 1]));
        let g2 = RatFunc::x();
        let h = rational_first_integral_radicals(&g1, &g2, 4).unwrap();
        assert!(apply_rational(&vf, &h).is_zero());
        // the one-function formula is not invariant for its own rho
        let g = RatFunc::x();
        let w1 = RatFunc::new(Poly::one(), Poly::x());
        let rho = &w1.derivative() + &(&w1 * &w1);
        let h = rational_first_integral_cyclic(&g, 1).unwrap();
        assert!(!apply_rational(&vric_field(&rho), &h).is_zero());
    }

    #[test]
    fn classification() {
        let t = Tower::default();
        let r0 = RatFunc::zero();
        let res = crate::kovacic::solve_rlde(&crate::odeforms::ReducedODE { rho: r0.clone() }).unwrap();
        assert_eq!(classify_first_integral(&r0, &res, &t).unwrap().label(), "Darboux");
        let herm = RatFunc::from_poly(poly(&[-7, 0, 1]));
        let res = crate::kovacic::solve_rlde(&crate::odeforms::ReducedODE { rho: herm.clone() }).unwrap();
        assert_eq!(
            classify_first_integral(&herm, &res, &t).unwrap().label(),
            "Darboux-Schwarz-Christoffel"
        );
        assert_eq!(
            classify_first_integral(&RatFunc::x(), &KovacicResult::Case4, &t).unwrap(),
            FirstIntegralType::None
        );
    }
}
