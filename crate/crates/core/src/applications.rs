//! End-to-end pipelines for quadratic planar systems, orthogonal
//! polynomial fields, Lienard reductions and a few worked families.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::darboux::{classify_first_integral, AlgebraicCurve};
use crate::error::{Error, Result};
use crate::exactalg::{BiPoly, Scalar, Tower};
use crate::kovacic::{solve_rlde_traced, KovacicResult};
use crate::odeforms::{transform_s, transform_t, PlanarVectorField, ReducedODE, RiccatiGeneral, SecondOrderODE};
use crate::specialfn::{
    biconfluent_heun_test, kimura_row, kimura_test, martinet_ramis_test, riemann_rho, BiconfluentParams,
    CriterionVerdict, ExponentDiffs, OrthFamilyRow, OrthReduction, Verdict, WhittakerParams,
    orth_reduced_rho,
};
use crate::{Poly, RatFunc};

/// One step of a derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub stage: String,
    pub detail: String,
}

fn step(trace: &mut Vec<Step>, stage: &str, detail: impl Into<String>) {
    trace.push(Step {
        stage: stage.to_string(),
        detail: detail.into(),
    });
}

fn poly(c: Vec<Scalar>) -> RatFunc {
    RatFunc::from_poly(Poly::new(c))
}

// ------------------------------------------------------------------ (S1)

/// `x' = x`, `y' = eps x + lambda y + b20 x^2 + b11 x y + b02 y^2`
#[derive(Clone, Debug, PartialEq)]
pub struct S1Params {
    pub eps: Scalar,
    pub lambda: Scalar,
    pub b20: Scalar,
    pub b11: Scalar,
    pub b02: Scalar,
}

/// Same coefficients with `x' = y`.
pub type S2Params = S1Params;

impl S1Params {
    fn quadratic_part(&self) -> BiPoly {
        BiPoly::from_terms([
            ((1, 0), self.eps.clone()),
            ((0, 1), self.lambda.clone()),
            ((2, 0), self.b20.clone()),
            ((1, 1), self.b11.clone()),
            ((0, 2), self.b02.clone()),
        ])
    }

    pub fn s1_field(&self) -> Result<PlanarVectorField> {
        PlanarVectorField::new(BiPoly::x(), self.quadratic_part())
    }

    pub fn s2_field(&self) -> Result<PlanarVectorField> {
        PlanarVectorField::new(BiPoly::y(), self.quadratic_part())
    }

    /// Foliation `dy/dx = (eps + b20 x) + (lambda + b11 x)/x y + b02/x y^2`.
    pub fn s1_riccati(&self) -> Result<RiccatiGeneral> {
        let x = Poly::x();
        RiccatiGeneral::new(
            poly(vec![self.eps.clone(), self.b20.clone()]),
            RatFunc::new(Poly::new(vec![self.lambda.clone(), self.b11.clone()]), x.clone()),
            RatFunc::new(Poly::constant(self.b02.clone()), x),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct S1Report {
    pub discriminant: Scalar,
    pub sqrt_discriminant: Scalar,
    pub whittaker: WhittakerParams,
    /// `xi'' = rho xi` before rescaling `x` by the square root of the discriminant.
    pub rho: RatFunc,
    pub martinet_ramis: CriterionVerdict,
    /// `2(kappa + mu)` or `2(kappa - mu)` is an odd integer.
    pub odd_integer: bool,
    pub a1: bool,
    pub b1: bool,
    pub trace: Vec<Step>,
}

pub fn s1_analyze(p: &S1Params, tower: &Tower) -> Result<S1Report> {
    let mut trace = Vec::new();
    let disc = &(&p.b11 * &p.b11) - &(&Scalar::int(4) * &(&p.b20 * &p.b02));
    if disc.is_zero() {
        return Err(Error::DegenerateDiscriminant);
    }
    let sq = disc.try_sqrt()?;
    tower.check([&sq])?;
    let half = Scalar::ratio(1, 2);
    let kappa_num = &(&p.b02 * &p.eps) + &(&(&p.b11 * &half) * &(&Scalar::one() - &p.lambda));
    let kappa = &kappa_num / &sq;
    let mu = &p.lambda * &half;
    let quarter = Scalar::ratio(1, 4);
    let x = Poly::x();
    let rho = &(&RatFunc::constant(&disc * &quarter) - &RatFunc::new(Poly::constant(kappa_num.clone()), x.clone()))
        + &RatFunc::new(
            Poly::constant(&(&(&p.lambda * &p.lambda) - &Scalar::one()) * &quarter),
            &x * &x,
        );
    step(&mut trace, "discriminant", format!("b11^2 - 4 b20 b02 = {}", disc.to_text()));
    if !p.b02.is_zero() {
        let (red, _) = transform_t(&p.s1_riccati()?);
        if red.r != rho {
            return Err(Error::Verification(format!(
                "reduced form {} differs from {}",
                red.r.to_text("x"),
                rho.to_text("x")
            )));
        }
        step(&mut trace, "transform T", format!("r = {}", rho.to_text("x")));
    } else {
        step(&mut trace, "transform T", "b02 = 0: the foliation is linear, kappa and mu taken from the closed form");
    }
    let whittaker = WhittakerParams {
        kappa: kappa.clone(),
        mu: mu.clone(),
    };
    step(
        &mut trace,
        "rescale",
        format!("x -> x/{}: Whittaker kappa = {}, mu = {}", sq.to_text(), kappa.to_text(), mu.to_text()),
    );
    let mr = martinet_ramis_test(&whittaker);
    let flipped = martinet_ramis_test(&WhittakerParams {
        kappa: -kappa.clone(),
        mu: mu.clone(),
    });
    if mr.verdict != flipped.verdict {
        return Err(Error::Verification("verdict depends on the square-root branch".into()));
    }
    step(&mut trace, "Martinet-Ramis", format!("{}: {}", mr.verdict, mr.detail));
    let two = Scalar::int(2);
    let odd = |s: Scalar| s.to_integer().is_some_and(|n| num_integer::Integer::is_odd(&n));
    let odd_integer = odd(&two * &(&kappa + &mu)) || odd(&two * &(&kappa - &mu));
    let a1 = p.b02.is_zero() && p.lambda.is_zero();
    let b1 = p.b02.is_zero() && p.lambda.to_rational().is_some_and(|q| q.is_negative());
    step(&mut trace, "conditions", format!("a1 = {a1}, b1 = {b1}, 2(kappa +- mu) odd = {odd_integer}"));
    Ok(S1Report {
        discriminant: disc,
        sqrt_discriminant: sq,
        whittaker,
        rho,
        martinet_ramis: mr,
        odd_integer,
        a1,
        b1,
        trace,
    })
}

// ------------------------------------------------------------------ (S2)

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum S2Class {
    Bernoulli,
    Linear,
    Separable,
    Lienard,
    Unclassified,
}

impl S2Class {
    pub fn clause(&self) -> Option<&'static str> {
        match self {
            S2Class::Bernoulli => Some("(i)"),
            S2Class::Linear => Some("(ii)"),
            S2Class::Separable => Some("(iii)"),
            S2Class::Lienard => Some("(iv)"),
            S2Class::Unclassified => None,
        }
    }
}

impl fmt::Display for S2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            S2Class::Bernoulli => "Bernoulli",
            S2Class::Linear => "linear",
            S2Class::Separable => "separable",
            S2Class::Lienard => "Lienard",
            S2Class::Unclassified => "unclassified",
        })
    }
}

pub fn s2_classify(p: &S2Params) -> S2Class {
    if p.lambda.is_zero() && p.b11.is_zero() {
        S2Class::Bernoulli
    } else if p.eps.is_zero() && p.b20.is_zero() {
        S2Class::Linear
    } else if p.b20.is_zero() && p.b02.is_zero() && p.lambda.is_zero() && !(&p.eps * &p.b11).is_zero() {
        S2Class::Separable
    } else if p.b02.is_zero() {
        S2Class::Lienard
    } else {
        S2Class::Unclassified
    }
}

// -------------------------------------------------- orthogonal polynomials

/// `x' = Q`, `v' = (lambda/mu) Q + (Q' - L) v + mu v^2`, with `v` as `y`.
pub fn lien_field(row: &OrthFamilyRow, mu: &Scalar) -> Result<PlanarVectorField> {
    let inv = mu
        .checked_inv()
        .ok_or_else(|| Error::Invalid("mu must be nonzero".into()))?;
    let q = BiPoly::from_x_poly(&row.q);
    let lin = BiPoly::from_x_poly(&(&row.q.derivative() - &row.l));
    let v = BiPoly::y();
    let vq = &(&q.scale(&(&row.lambda * &inv)) + &(&lin * &v)) + &(&v * &v).scale(mu);
    PlanarVectorField::new(q, vq)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrthCurve {
    pub field: PlanarVectorField,
    pub curve: AlgebraicCurve,
    pub reduction: OrthReduction,
}

/// The curve `mu v P_n + Q P_n' = 0`, checked against the field.
pub fn orth_invariant_curve(row: &OrthFamilyRow, mu: &Scalar) -> Result<OrthCurve> {
    let field = lien_field(row, mu)?;
    let reduction = orth_reduced_rho(row)?;
    let p = &reduction.p;
    let f = &(&BiPoly::y() * &BiPoly::from_x_poly(p)).scale(mu) + &BiPoly::from_x_poly(&(&row.q * &p.derivative()));
    let curve = AlgebraicCurve::new(&field, f)
        .ok_or_else(|| Error::Verification(format!("{} n = {}: curve is not invariant", row.family.tag(), row.n)))?;
    if !reduction.verify() {
        return Err(Error::Verification(format!(
            "{} n = {}: xi'' != rho xi",
            row.family.tag(),
            row.n
        )));
    }
    Ok(OrthCurve {
        field,
        curve,
        reduction,
    })
}

// ---------------------------------------------------------------- Lienard

/// `y y' = (a(2m+k) x^{2k} + b(2m-k) x^{m-k-1}) y - (a^2 m x^{4k} + c x^{2k} + b^2 m) x^{2m-2k-1}`
#[derive(Clone, Debug, PartialEq)]
pub struct Lienard1Params {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub m: Scalar,
    pub k: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lienard1Report {
    pub mu: Scalar,
    /// `nu^2 + nu + C`
    pub nu_quadratic: Poly,
    pub nu: Vec<Scalar>,
    pub exponents: ExponentDiffs,
    pub verdict: CriterionVerdict,
    pub trace: Vec<Step>,
}

/// Letter of the lettered families for a finite-group table row.
pub fn lienard_table_letter(row: usize) -> Option<char> {
    match row {
        1 => Some('a'),
        3 => Some('b'),
        11 => Some('c'),
        12 => Some('d'),
        13 => Some('e'),
        15 => Some('f'),
        _ => None,
    }
}

/// Reduced form of the Legendre equation with exponent differences
/// `mu`, `mu`, `2 nu + 1`, moved to `0`, `1`, `infinity`.
pub fn legendre_rho(mu: &Scalar, nu: &Scalar) -> RatFunc {
    let e = &(&Scalar::int(2) * nu) + &Scalar::one();
    riemann_rho(mu, mu, &e)
}

/// Verdict for the Legendre equation from `mu` and one root `nu`.
pub fn legendre_verdict(mu: &Scalar, nu: &Scalar) -> CriterionVerdict {
    let ints = [("mu + nu", mu + nu), ("mu - nu", mu - nu), ("nu", nu.clone())];
    for (name, v) in &ints {
        if v.is_integer() {
            return CriterionVerdict {
                verdict: Verdict::Integrable,
                clause: Some("(1)".into()),
                detail: format!("{name} = {} is an integer", v.to_text()),
            };
        }
    }
    let e = ExponentDiffs::new(mu.clone(), mu.clone(), &(&Scalar::int(2) * nu) + &Scalar::one());
    if let Some((row, _, _)) = kimura_row(&e) {
        let clause = match lienard_table_letter(row) {
            Some(l) => format!("(2)({l})"),
            None => format!("(2) row {row}"),
        };
        return CriterionVerdict {
            verdict: Verdict::Integrable,
            clause: Some(clause),
            detail: format!("(mu, mu, 2nu+1) matches finite-group row {row}"),
        };
    }
    CriterionVerdict {
        verdict: Verdict::NotIntegrable,
        clause: None,
        detail: "neither mu +- nu nor nu is an integer and no table row matches".into(),
    }
}

pub fn lienard1_reduce(p: &Lienard1Params, tower: &Tower) -> Result<Lienard1Report> {
    if !p.m.is_rational() || !p.k.is_rational() {
        return Err(Error::Invalid("m and k must be rational".into()));
    }
    if p.m.is_zero() {
        return Err(Error::Invalid("m must be nonzero".into()));
    }
    let mut trace = Vec::new();
    let (m, k) = (&p.m, &p.k);
    let den = &(m * &p.c) - &(&Scalar::int(2) * &(&(&p.a * &p.b) * &(m * m)));
    if den.is_zero() {
        return Err(Error::SingularParameterCombination("m c - 2 a b m^2 = 0".into()));
    }
    let mu = -(&(m + k) / &(&Scalar::int(2) * m));
    let c0 = &(&(&(m * m) - &(k * k)) / &(&Scalar::int(4) * &(m * m))) - &(&(&(&p.a * &p.b) * &(k * k)) / &den);
    let quad = Poly::new(vec![c0.clone(), Scalar::one(), Scalar::one()]);
    step(&mut trace, "Legendre form", format!("mu = {}, nu^2 + nu + {} = 0", mu.to_text(), c0.to_text()));
    let sq = (&Scalar::one() - &(&Scalar::int(4) * &c0)).try_sqrt()?;
    tower.check([&sq])?;
    let half = Scalar::ratio(1, 2);
    let nu1 = &(&sq - &Scalar::one()) * &half;
    let nu2 = &(&-sq.clone() - &Scalar::one()) * &half;
    step(&mut trace, "roots", format!("nu = {}, {}", nu1.to_text(), nu2.to_text()));
    let verdict = legendre_verdict(&mu, &nu1);
    if verdict.verdict != legendre_verdict(&mu, &nu2).verdict {
        return Err(Error::Verification("verdict depends on the root of the nu quadratic".into()));
    }
    let exponents = ExponentDiffs::new(mu.clone(), mu.clone(), &(&Scalar::int(2) * &nu1) + &Scalar::one());
    if kimura_test(&exponents).verdict != verdict.verdict {
        return Err(Error::Verification("Legendre verdict disagrees with the exponent-difference test".into()));
    }
    step(
        &mut trace,
        "criterion",
        format!("{} {}: {}", verdict.verdict, verdict.clause.clone().unwrap_or_default(), verdict.detail),
    );
    let mut nu = vec![nu1, nu2];
    nu.dedup();
    Ok(Lienard1Report {
        mu,
        nu_quadratic: quad,
        nu,
        exponents,
        verdict,
        trace,
    })
}

// ----------------------------------------------------------- Abel-Lienard

/// `dx/dw = A(x) + B(x) w` with `A = a + b x + c x^2`, `B = alpha + beta x + gamma x^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct AbelLienardParams {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
}

impl AbelLienardParams {
    /// The equation as a Riccati equation in `x` with independent variable `w`
    /// (written `x` in the returned functions).
    pub fn riccati(&self) -> Result<RiccatiGeneral> {
        RiccatiGeneral::new(
            poly(vec![self.a.clone(), self.alpha.clone()]),
            poly(vec![self.b.clone(), self.beta.clone()]),
            poly(vec![self.c.clone(), self.gamma.clone()]),
        )
    }

    /// Closed form of the reduced potential.
    pub fn rho(&self) -> RatFunc {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let (al, be, ga) = (&self.alpha, &self.beta, &self.gamma);
        let two = Scalar::int(2);
        let four = Scalar::int(4);
        let s2 = &(&(be * be) - &(&four * &(al * ga))) / &four;
        let s1 = -(&(&(&(&two * &(a * ga)) + &(&two * &(al * c))) - &(b * be)) / &two);
        let s0 = -(&(&(&four * &(a * c)) - &(b * b)) / &four);
        let mut rho = poly(vec![s0, s1, s2]);
        let lin = Poly::new(vec![c.clone(), ga.clone()]);
        if !lin.is_zero() {
            let e = &(b * ga) - &(be * c);
            rho = &rho + &RatFunc::new(Poly::constant(e), lin.scale(&two));
            let f = &(&Scalar::int(3) * &(ga * ga)) / &four;
            rho = &rho + &RatFunc::new(Poly::constant(f), &lin * &lin);
        }
        rho
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AbelReport {
    pub rho: RatFunc,
    pub biconfluent: Option<BiconfluentParams>,
    /// `z = k tau` with `tau = gamma x + c`.
    pub scaling: Option<Scalar>,
    pub verdict: CriterionVerdict,
    pub kovacic_case: Option<u8>,
    pub trace: Vec<Step>,
}

pub fn abel_lienard_reduce(p: &AbelLienardParams, tower: &Tower) -> Result<AbelReport> {
    if p.alpha.is_zero() && p.beta.is_zero() && p.gamma.is_zero() {
        return Err(Error::Degenerate("B vanishes identically".into()));
    }
    let mut trace = Vec::new();
    let ric = p.riccati()?;
    let (red, _) = transform_t(&ric);
    let rho = p.rho();
    if red.r != rho {
        return Err(Error::Verification(format!(
            "closed-form rho {} differs from the reduction {}",
            rho.to_text("x"),
            red.r.to_text("x")
        )));
    }
    step(&mut trace, "transform T, R", format!("rho = {}", rho.to_text("x")));
    let kovacic = |trace: &mut Vec<Step>| -> Result<(u8, CriterionVerdict)> {
        let (res, _) = solve_rlde_traced(&ReducedODE { rho: rho.clone() }, tower)?;
        if !res.verify(&rho) {
            return Err(Error::Verification("Kovacic result failed its identity".into()));
        }
        let case = res.case_number();
        step(trace, "Kovacic", format!("case {case}"));
        let verdict = CriterionVerdict {
            verdict: if res.is_liouvillian() {
                Verdict::Integrable
            } else {
                Verdict::NotIntegrable
            },
            clause: Some(format!("Kovacic case {case}")),
            detail: format!("Kovacic on rho gives case {case}"),
        };
        Ok((case, verdict))
    };
    if p.beta.is_zero() && p.gamma.is_zero() {
        step(&mut trace, "branch", "beta = gamma = 0: rho is a polynomial of degree 1");
        let (case, mut verdict) = kovacic(&mut trace)?;
        if case != 4 {
            return Err(Error::Verification(format!("degree-1 polynomial potential gave case {case}")));
        }
        verdict.clause = Some("polynomial of degree 1".into());
        verdict.detail = "odd-degree polynomial potential: Kovacic case 4".into();
        return Ok(AbelReport {
            rho,
            biconfluent: None,
            scaling: None,
            verdict,
            kovacic_case: Some(case),
            trace,
        });
    }
    let four = Scalar::int(4);
    let ga = &p.gamma;
    let disc = &(&p.beta * &p.beta) - &(&four * &(&p.alpha * ga));
    if ga.is_zero() || disc.is_zero() {
        step(&mut trace, "branch", "gamma = 0 or beta^2 - 4 alpha gamma = 0: no biconfluent form, Kovacic decides");
        let (case, verdict) = kovacic(&mut trace)?;
        return Ok(AbelReport {
            rho,
            biconfluent: None,
            scaling: None,
            verdict,
            kovacic_case: Some(case),
            trace,
        });
    }
    // rho_tau = rho(x(tau)) / gamma^2 with tau = gamma x + c
    let g2 = ga * ga;
    let pr = rho_parts(p);
    let s2 = &pr[2] / &(&g2 * &g2);
    let s1 = &(&(&(&Scalar::int(-2) * &p.c) * &pr[2]) / &g2 + &(&pr[1] / ga)) / &g2;
    let s0 = &(&(&(&pr[2] * &(&p.c * &p.c)) / &g2 - &(&(&pr[1] * &p.c) / ga)) + &pr[0]) / &g2;
    let e1 = &pr[3] / &g2;
    let k = s2.try_sqrt()?.try_sqrt()?;
    tower.check([&k])?;
    let k2 = &k * &k;
    let delta1 = &s1 / &(&k2 * &k);
    let delta2 = &(&(&delta1 * &delta1) / &four) - &(&s0 / &k2);
    let delta3 = &(&Scalar::int(2) * &e1) / &k;
    let bp = BiconfluentParams::new([Scalar::int(2), delta1, delta2, delta3]);
    // rho_z(z) = rho(x(z)) (dx/dz)^2, x = (z/k - c)/gamma
    let kg = &k * ga;
    let inv = kg
        .checked_inv()
        .ok_or_else(|| Error::Verification("zero scaling".into()))?;
    let xz = RatFunc::from_poly(Poly::new(vec![-(&p.c / ga), inv.clone()]));
    let direct = rho.compose(&xz).scale(&(&inv * &inv));
    if direct != bp.rho() {
        return Err(Error::Verification(format!(
            "biconfluent form {} differs from the substituted potential {}",
            bp.rho().to_text("z"),
            direct.to_text("z")
        )));
    }
    step(
        &mut trace,
        "biconfluent form",
        format!(
            "tau = gamma x + c, z = {} tau: delta = ({}, {}, {}, {})",
            k.to_text(),
            bp.delta0.to_text(),
            bp.delta1.to_text(),
            bp.delta2.to_text(),
            bp.delta3.to_text()
        ),
    );
    let verdict = biconfluent_heun_test(&bp);
    step(&mut trace, "criterion", format!("{}: {}", verdict.verdict, verdict.detail));
    Ok(AbelReport {
        rho,
        biconfluent: Some(bp),
        scaling: Some(k),
        verdict,
        kovacic_case: None,
        trace,
    })
}

/// `[s0, s1, s2, e]` with `rho = s2 x^2 + s1 x + s0 + e/(gamma x + c) + ...`.
fn rho_parts(p: &AbelLienardParams) -> [Scalar; 4] {
    let r = p.rho();
    let (q, _) = r.numer().div_rem(r.denom());
    let e = &(&(&p.b * &p.gamma) - &(&p.beta * &p.c)) / &Scalar::int(2);
    [q.coeff(0), q.coeff(1), q.coeff(2), e]
}

// --------------------------------------------------------- worked families

/// `y'' + (7x - 4)/(6x(x-1)) y' - (36 nu^2 - 1)/(144 x(x-1)) y = 0`
pub fn tetrahedral_family_ode(nu: &Scalar) -> SecondOrderODE {
    let xx = Poly::new(vec![Scalar::zero(), Scalar::int(-1), Scalar::one()]);
    SecondOrderODE {
        b1: RatFunc::new(Poly::new(vec![Scalar::int(-4), Scalar::int(7)]), xx.scale(&Scalar::int(6))),
        b0: RatFunc::new(
            Poly::constant(-(&(&Scalar::int(36) * &(nu * nu)) - &Scalar::one())),
            xx.scale(&Scalar::int(144)),
        ),
    }
}

/// `9x^4/4 + 3/2 d2 x^2 - d1 x + d2^2/4 - d0`
pub fn triconfluent_rho(d0: &Scalar, d1: &Scalar, d2: &Scalar) -> RatFunc {
    poly(vec![
        &(&(d2 * d2) * &Scalar::ratio(1, 4)) - d0,
        -d1.clone(),
        d2 * &Scalar::ratio(3, 2),
        Scalar::zero(),
        Scalar::ratio(9, 4),
    ])
}

#[derive(Clone, Debug, PartialEq)]
pub struct WorkedExample {
    pub name: String,
    pub params: String,
    pub rho: RatFunc,
    pub result: KovacicResult,
    pub verified: bool,
    pub first_integral: Option<&'static str>,
}

fn run_example(name: &str, params: String, rho: RatFunc, tower: &Tower) -> Result<WorkedExample> {
    let (result, _) = solve_rlde_traced(&ReducedODE { rho: rho.clone() }, tower)?;
    let verified = result.verify(&rho);
    let first_integral = match &result {
        KovacicResult::Case3 { .. } => Some(classify_first_integral(&rho, &result, tower)?.label()),
        _ => None,
    };
    Ok(WorkedExample {
        name: name.to_string(),
        params,
        rho,
        result,
        verified,
        first_integral,
    })
}

pub fn worked_examples(tower: &Tower) -> Result<Vec<WorkedExample>> {
    let mut out = Vec::new();
    let half = Scalar::ratio(1, 2);
    for n in [2, 3] {
        let nu = Scalar::ratio(1, n);
        out.push(run_example(
            "hypergeometric",
            format!("(lambda, mu, nu) = (1/2, 1/2, 1/{n})"),
            riemann_rho(&half, &half, &nu),
            tower,
        )?);
    }
    for n in [3, 4] {
        let (red, _) = transform_s(&tetrahedral_family_ode(&Scalar::ratio(1, n)));
        out.push(run_example("polyhedral", format!("nu = 1/{n}"), red.rho, tower)?);
    }
    for d in [[0, 0, 0], [1, 2, 3]] {
        let [d0, d1, d2] = d.map(Scalar::int);
        out.push(run_example(
            "triconfluent",
            format!("delta = ({}, {}, {})", d[0], d[1], d[2]),
            triconfluent_rho(&d0, &d1, &d2),
            tower,
        )?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfn::OrthFamily;

    fn s(n: i64) -> Scalar {
        Scalar::int(n)
    }

    fn s1(eps: i64, lambda: Scalar, b20: i64, b11: i64, b02: i64) -> S1Params {
        S1Params {
            eps: s(eps),
            lambda,
            b20: s(b20),
            b11: s(b11),
            b02: s(b02),
        }
    }

    #[test]
    fn s1_cases() {
        let t = Tower::default();
        let r = s1_analyze(&s1(3, s(0), 0, 1, 0), &t).unwrap();
        assert!(r.a1 && r.odd_integer && r.martinet_ramis.is_integrable());
        let r = s1_analyze(&s1(2, Scalar::ratio(-2, 3), 5, 1, 0), &t).unwrap();
        assert!(r.b1 && r.odd_integer && r.martinet_ramis.is_integrable());
        let r = s1_analyze(&s1(0, Scalar::ratio(1, 3), -1, 0, 1), &t).unwrap();
        assert_eq!(r.whittaker.kappa, Scalar::ratio(0, 1));
        assert!(!r.martinet_ramis.is_integrable());
        assert!(matches!(s1_analyze(&s1(1, s(1), 1, 2, 1), &t), Err(Error::DegenerateDiscriminant)));
    }

    #[test]
    fn s1_rho_matches_reduction() {
        let t = Tower::default();
        for (e, l, b20, b11, b02) in [(1, 2, 3, 1, -1), (0, -1, 1, 5, 2), (2, 0, 0, 3, 1)] {
            s1_analyze(&s1(e, s(l), b20, b11, b02), &t).unwrap();
        }
    }

    #[test]
    fn s2_order() {
        assert_eq!(s2_classify(&s1(1, s(0), 1, 0, 1)), S2Class::Bernoulli);
        assert_eq!(s2_classify(&s1(0, s(1), 0, 1, 1)), S2Class::Linear);
        assert_eq!(s2_classify(&s1(1, s(0), 0, 1, 0)), S2Class::Separable);
        assert_eq!(s2_classify(&s1(1, s(1), 1, 1, 0)), S2Class::Lienard);
        assert_eq!(s2_classify(&s1(1, s(1), 1, 1, 1)), S2Class::Unclassified);
    }

    #[test]
    fn hermite_curve() {
        let row = OrthFamily::Hermite.row(1, &s(0), &s(0));
        let c = orth_invariant_curve(&row, &s(1)).unwrap();
        assert_eq!(c.curve.f.to_text("x", "v"), "x*v + 1");
    }

    #[test]
    fn lienard_examples() {
        let t = Tower::default();
        let p = |a, m, k| Lienard1Params { a: s(a), b: s(1), c: s(1), m: s(m), k: s(k) };
        let r = lienard1_reduce(&p(0, 1, 1), &t).unwrap();
        assert_eq!(r.mu, s(-1));
        assert_eq!(r.verdict.clause.as_deref(), Some("(1)"));
        let r = lienard1_reduce(&p(0, 1, 0), &t).unwrap();
        assert_eq!(r.mu, Scalar::ratio(-1, 2));
        assert_eq!(r.nu, vec![Scalar::ratio(-1, 2)]);
        assert!(r.verdict.is_integrable());
        let bad = Lienard1Params { a: s(1), b: s(1), c: s(2), m: s(1), k: s(1) };
        assert!(matches!(lienard1_reduce(&bad, &t), Err(Error::SingularParameterCombination(_))));
    }

    #[test]
    fn abel_branches() {
        let t = Tower::default();
        let p = |a, b, c, al: Scalar, be, ga| AbelLienardParams { a: s(a), b: s(b), c: s(c), alpha: al, beta: s(be), gamma: s(ga) };
        let r = abel_lienard_reduce(&p(1, 2, 1, s(1), 0, 0), &t).unwrap();
        assert_eq!(r.verdict.verdict, Verdict::NotIntegrable);
        let r = abel_lienard_reduce(&p(1, 0, 0, Scalar::ratio(-1, 4), 0, 1), &t).unwrap();
        let bp = r.biconfluent.unwrap();
        assert_eq!(bp.delta0, s(2));
    }
}
