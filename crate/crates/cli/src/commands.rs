use num_traits::Zero;
use serde_json::{json, Value};

use riccati_galois::applications::{
    abel_lienard_reduce, legendre_rho, lienard1_reduce, orth_invariant_curve, s1_analyze, s2_classify,
    worked_examples, AbelLienardParams, Lienard1Params, S1Params,
};
use riccati_galois::darboux::{
    classify_first_integral, cofactor_of, darboux_combination, integrating_factor_from_solution,
    AlgebraicCurve, DarbouxObject, ExponentialFactor, Target,
};
use riccati_galois::exprparse::{parse_bipoly, parse_ratfunc, parse_scalar, parse_vectorfield, Canonical};
use riccati_galois::kovacic::{second_solution, solve_rlde_traced, KovacicResult, TraceEntry};
use riccati_galois::odeforms::{
    transform_b, transform_s, transform_t, vric_field, PlanarVectorField, ReducedODE, RiccatiGeneral,
    SecondOrderODE,
};
use riccati_galois::specialfn::{
    bessel_ode, bessel_test, biconfluent_heun_test_with, kimura_test, lame_classify, martinet_ramis_test_with,
    BiconfluentParams, CriterionVerdict, ExponentDiffs, LameParams, OrthFamily, PiReading, PiSigns, Verdict,
    WhittakerParams,
};
use riccati_galois::{Error, RatFunc, Result, Scalar};

use riccati_galois_cli::report::Report;
use crate::{read_stdin_if_dash, Ctx, DarbouxArgs, Family, Pipeline, ReadingArg, SArgs, SignsArg, SolveArgs};

fn scalar(ctx: &Ctx, src: &str) -> Result<Scalar> {
    parse_scalar(src, &ctx.bind)
}

fn ratfunc(ctx: &Ctx, src: &str) -> Result<RatFunc> {
    parse_ratfunc(src, "x", &ctx.bind)
}

fn verification(what: impl Into<String>) -> Error {
    Error::Verification(what.into())
}

// ------------------------------------------------------------------ solve

enum Equation {
    Reduced(RatFunc),
    Linear(RatFunc, RatFunc),
    Riccati(RatFunc, RatFunc, RatFunc),
}

fn parse_equation_text(ctx: &Ctx, src: &str) -> Result<Equation> {
    let mut fields = std::collections::BTreeMap::new();
    for part in src.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("expected NAME=EXPR, got `{part}`")))?;
        let name = name.trim();
        if !["rho", "b1", "b0", "a0", "a1", "a2"].contains(&name) {
            return Err(Error::Invalid(format!("unknown coefficient `{name}`")));
        }
        if fields.insert(name.to_string(), ratfunc(ctx, value.trim())?).is_some() {
            return Err(Error::Invalid(format!("coefficient `{name}` given twice")));
        }
    }
    let keys: Vec<String> = fields.keys().cloned().collect();
    let keys: Vec<&str> = keys.iter().map(String::as_str).collect();
    let mut take = |k: &str| fields.remove(k).expect("key present");
    match keys.as_slice() {
        ["rho"] => Ok(Equation::Reduced(take("rho"))),
        ["b0", "b1"] => Ok(Equation::Linear(take("b1"), take("b0"))),
        ["a0", "a1", "a2"] => Ok(Equation::Riccati(take("a0"), take("a1"), take("a2"))),
        _ => Err(Error::Invalid(format!(
            "expected rho, b1 and b0, or a0, a1 and a2; got {}",
            keys.join(", ")
        ))),
    }
}

fn equation(ctx: &Ctx, a: &SolveArgs) -> Result<Equation> {
    if let Some(src) = &a.equation {
        return parse_equation_text(ctx, &read_stdin_if_dash(src)?);
    }
    if let Some(rho) = &a.rho {
        return Ok(Equation::Reduced(ratfunc(ctx, rho)?));
    }
    if let (Some(b1), Some(b0)) = (&a.b1, &a.b0) {
        return Ok(Equation::Linear(ratfunc(ctx, b1)?, ratfunc(ctx, b0)?));
    }
    if let (Some(a0), Some(a1), Some(a2)) = (&a.a0, &a.a1, &a.a2) {
        return Ok(Equation::Riccati(ratfunc(ctx, a0)?, ratfunc(ctx, a1)?, ratfunc(ctx, a2)?));
    }
    Err(Error::Invalid("no equation given; use --rho, --b1/--b0, --a0/--a1/--a2 or a positional equation".into()))
}

fn summarize_search(rep: &mut Report, trace: &[TraceEntry], result_case: u8) {
    for case in 1..=3u8.min(result_case) {
        let tried: Vec<&TraceEntry> = trace.iter().filter(|t| t.case == case).collect();
        if tried.is_empty() {
            rep.step(&format!("kovacic case {case}"), "excluded by the local conditions");
            continue;
        }
        let hit = tried.iter().find(|t| t.found);
        let detail = match hit {
            Some(t) => {
                let n = t.n.map(|n| format!("n = {n}, ")).unwrap_or_default();
                format!("{} candidate(s), found with {n}m = {}, {}", tried.len(), t.m, t.choice)
            }
            None => format!("{} candidate(s), none found", tried.len()),
        };
        rep.step(&format!("kovacic case {case}"), detail);
    }
}

pub fn solve(ctx: &Ctx, a: &SolveArgs) -> Result<Report> {
    let mut rep = Report::new("solve");
    let eq = equation(ctx, a)?;
    let mut riccati: Option<RiccatiGeneral> = None;
    let mut substitution = None;
    let rho = match eq {
        Equation::Reduced(rho) => {
            rep.input("form", "reduced");
            rep.input("rho", rho.print_canonical());
            rho
        }
        Equation::Linear(b1, b0) => {
            rep.input("form", "linear");
            rep.input("b1", b1.print_canonical());
            rep.input("b0", b0.print_canonical());
            let (red, e) = transform_s(&SecondOrderODE { b1, b0 });
            rep.step("S", format!("y = xi*exp({}*int({}))", e.coeff, e.integrand.print_canonical()));
            red.rho
        }
        Equation::Riccati(a0, a1, a2) => {
            rep.input("form", "riccati");
            rep.input("a0", a0.print_canonical());
            rep.input("a1", a1.print_canonical());
            rep.input("a2", a2.print_canonical());
            let g = RiccatiGeneral::new(a0, a1, a2)?;
            let (red, sub) = transform_t(&g);
            rep.step(
                "T",
                format!("v = {} + ({})*w", sub.alpha.print_canonical(), sub.beta.print_canonical()),
            );
            let lin = transform_b(&g);
            rep.step("B", format!("b1 = {}, b0 = {}", lin.b1.print_canonical(), lin.b0.print_canonical()));
            let (via_linear, _) = transform_s(&lin);
            if via_linear.rho != red.r {
                return Err(verification("the T and S-after-B reductions disagree"));
            }
            rep.step("S", "agrees with T");
            riccati = Some(g);
            substitution = Some(sub);
            red.r
        }
    };
    rep.artifact("rho", rho.print_canonical());
    let (res, trace) = solve_rlde_traced(&ReducedODE { rho: rho.clone() }, &ctx.tower)?;
    summarize_search(&mut rep, &trace, res.case_number());
    if !res.verify(&rho) {
        return Err(verification(format!("case {} result fails its identity", res.case_number())));
    }
    rep.verdict("case", res.case_number());
    rep.verdict("liouvillian", res.is_liouvillian());
    match &res {
        KovacicResult::Case1 { signs, omega, p, .. } => {
            let signs: Vec<String> = signs.iter().map(|(pt, s)| format!("{pt}: {s}")).collect();
            rep.artifact("signs", signs);
            rep.artifact("omega", omega.print_canonical());
            rep.artifact("P", p.print_canonical());
            let w = res.riccati_solution().expect("case 1 has a solution");
            rep.artifact("w", w.print_canonical());
            rep.artifact("xi2", second_solution(&res)?.to_text());
            let field = vric_field(&rho);
            let mu = integrating_factor_from_solution(&w, &field)?;
            if !mu.is_integrating_factor(&field) {
                return Err(verification("integrating factor fails X(mu)/mu = -div X"));
            }
            rep.artifact("integrating_factor", mu.to_text("w"));
            if let (Some(g), Some(sub)) = (&riccati, &substitution) {
                let v = &sub.alpha + &(&sub.beta * &w);
                if !g.residual(&v).is_zero() {
                    return Err(verification("back-substituted Riccati solution fails"));
                }
                rep.artifact("v", v.print_canonical());
            }
        }
        KovacicResult::Case2 { e, theta, p, omega_poly, .. } => {
            let e: Vec<String> = e.iter().map(|(pt, k)| format!("{pt}: {k}")).collect();
            rep.artifact("e", e);
            rep.artifact("theta", theta.print_canonical());
            rep.artifact("P", p.print_canonical());
            rep.artifact("omega_poly", omega_poly.to_text("w"));
        }
        KovacicResult::Case3 { n, e, theta, s, p, omega_poly, .. } => {
            let e: Vec<String> = e.iter().map(|(pt, k)| format!("{pt}: {k}")).collect();
            rep.artifact("n", *n);
            rep.artifact("e", e);
            rep.artifact("theta", theta.print_canonical());
            rep.artifact("S", s.print_canonical());
            rep.artifact("P", p.print_canonical());
            rep.artifact("omega_poly", omega_poly.to_text("w"));
        }
        KovacicResult::Case4 => {}
    }
    let fi = classify_first_integral(&rho, &res, &ctx.tower)?;
    rep.verdict("first_integral", fi.label());
    Ok(rep)
}

// --------------------------------------------------------------- criteria

fn kovacic_case(ctx: &Ctx, rho: &RatFunc) -> Result<u8> {
    let (res, _) = solve_rlde_traced(&ReducedODE { rho: rho.clone() }, &ctx.tower)?;
    if !res.verify(rho) {
        return Err(verification("Kovacic result fails its identity"));
    }
    Ok(res.case_number())
}

/// Attaches the Kovacic case of `rho` and fails when it contradicts `v`.
fn cross_check(ctx: &Ctx, rep: &mut Report, v: &CriterionVerdict, rho: &RatFunc) -> Result<()> {
    rep.artifact("rho", rho.print_canonical());
    let case = kovacic_case(ctx, rho)?;
    rep.verdict("kovacic_case", case);
    let agrees = match v.verdict {
        Verdict::Integrable => case != 4,
        Verdict::NotIntegrable => case == 4,
        Verdict::Inconclusive => true,
    };
    rep.step("kovacic", format!("case {case}"));
    if !agrees {
        return Err(verification(format!(
            "criterion says {} but Kovacic returns case {case}",
            v.verdict
        )));
    }
    Ok(())
}

fn put_verdict(rep: &mut Report, v: &CriterionVerdict) {
    rep.verdict("verdict", v.verdict.to_string());
    rep.verdict("clause", v.clause.clone());
}

pub fn criteria(ctx: &Ctx, f: &Family) -> Result<Report> {
    match f {
        Family::Kimura { l, m, n } => {
            let mut rep = Report::new("criteria kimura");
            let (l, m, n) = (scalar(ctx, l)?, scalar(ctx, m)?, scalar(ctx, n)?);
            rep.input("l", l.to_text());
            rep.input("m", m.to_text());
            rep.input("n", n.to_text());
            let e = ExponentDiffs::new(l, m, n);
            let v = kimura_test(&e);
            rep.step("criterion", v.detail.clone());
            put_verdict(&mut rep, &v);
            cross_check(ctx, &mut rep, &v, &e.reduced_rho())?;
            Ok(rep)
        }
        Family::Whittaker { kappa, mu, exclude_zero } => {
            let mut rep = Report::new("criteria whittaker");
            let p = WhittakerParams { kappa: scalar(ctx, kappa)?, mu: scalar(ctx, mu)? };
            rep.input("kappa", p.kappa.to_text());
            rep.input("mu", p.mu.to_text());
            rep.input("zero_in_n", !exclude_zero);
            let v = martinet_ramis_test_with(&p, !exclude_zero);
            rep.step("criterion", v.detail.clone());
            put_verdict(&mut rep, &v);
            cross_check(ctx, &mut rep, &v, &p.rho())?;
            Ok(rep)
        }
        Family::Bessel { n } => {
            let mut rep = Report::new("criteria bessel");
            let n = scalar(ctx, n)?;
            rep.input("n", n.to_text());
            let v = bessel_test(&n);
            rep.step("criterion", v.detail.clone());
            put_verdict(&mut rep, &v);
            let (red, _) = transform_s(&bessel_ode(&n));
            cross_check(ctx, &mut rep, &v, &red.rho)?;
            Ok(rep)
        }
        Family::BiconfluentHeun { d0, d1, d2, d3, pi_reading, pi_signs } => {
            let mut rep = Report::new("criteria biconfluent-heun");
            let d = [scalar(ctx, d0)?, scalar(ctx, d1)?, scalar(ctx, d2)?, scalar(ctx, d3)?];
            for (i, s) in d.iter().enumerate() {
                rep.input(&format!("d{i}"), s.to_text());
            }
            let reading = match pi_reading {
                ReadingArg::Banded => PiReading::Banded,
                ReadingArg::Literal => PiReading::Literal,
            };
            let signs = match pi_signs {
                SignsArg::Kovacic => PiSigns::Kovacic,
                SignsArg::Printed => PiSigns::Printed,
            };
            rep.input("pi_reading", format!("{reading:?}").to_lowercase());
            rep.input("pi_signs", format!("{signs:?}").to_lowercase());
            let p = BiconfluentParams::new(d);
            let v = biconfluent_heun_test_with(&p, reading, signs);
            rep.step("criterion", v.detail.clone());
            put_verdict(&mut rep, &v);
            cross_check(ctx, &mut rep, &v, &p.rho())?;
            Ok(rep)
        }
        Family::Lame { n, b, g2, g3 } => {
            let mut rep = Report::new("criteria lame");
            let p = LameParams { n: scalar(ctx, n)?, b: scalar(ctx, b)?, g2: scalar(ctx, g2)?, g3: scalar(ctx, g3)? };
            rep.input("n", p.n.to_text());
            rep.input("b", p.b.to_text());
            rep.input("g2", p.g2.to_text());
            rep.input("g3", p.g3.to_text());
            let c = lame_classify(&p, &ctx.tower)?;
            let (red, _) = transform_s(&p.ode());
            rep.artifact("rho", red.rho.print_canonical());
            rep.verdict("label", c.label.text());
            rep.step("classify", c.label.text());
            if let Some(case) = c.kovacic_case {
                if kovacic_case(ctx, &red.rho)? != case {
                    return Err(verification("Lame classification disagrees with a fresh Kovacic run"));
                }
                rep.verdict("kovacic_case", case);
                rep.step("kovacic", format!("case {case}"));
            }
            if let riccati_galois::specialfn::LameLabel::LameFunction { k, m } = &c.label {
                let k: Vec<String> = k.iter().map(Scalar::to_text).collect();
                rep.artifact("k", k);
                rep.artifact("m", *m);
            }
            Ok(rep)
        }
    }
}

// ---------------------------------------------------------------- darboux

fn object_json(obj: &DarbouxObject) -> Value {
    json!({
        "curve_exponents": obj.lambdas.iter().map(Scalar::to_text).collect::<Vec<_>>(),
        "exp_exponents": obj.exp_lambdas.iter().map(Scalar::to_text).collect::<Vec<_>>(),
    })
}

pub fn darboux(ctx: &Ctx, a: &DarbouxArgs) -> Result<Report> {
    let mut rep = Report::new("darboux");
    let x: PlanarVectorField = parse_vectorfield(&read_stdin_if_dash(&a.field)?, &ctx.bind)?;
    rep.input("field", x.print_canonical());
    let div = x.divergence();
    rep.artifact("divergence", div.print_canonical());
    let mut curves = Vec::new();
    let mut curve_report = Vec::new();
    for src in &a.curves {
        let f = parse_bipoly(src, &ctx.bind)?;
        match AlgebraicCurve::new(&x, f.clone()) {
            Some(c) => {
                if cofactor_of(&x, &c.f).as_ref() != Some(&c.cofactor) {
                    return Err(verification("cofactor does not re-verify"));
                }
                curve_report.push(json!({
                    "f": f.print_canonical(),
                    "invariant": true,
                    "cofactor": c.cofactor.print_canonical(),
                }));
                curves.push(c);
            }
            None => curve_report.push(json!({ "f": f.print_canonical(), "invariant": false })),
        }
    }
    let mut exps = Vec::new();
    let mut exp_report = Vec::new();
    for src in &a.exps {
        let (g, h) = src
            .split_once(';')
            .ok_or_else(|| Error::Invalid(format!("expected `G; H`, got `{src}`")))?;
        let (g, h) = (parse_bipoly(g, &ctx.bind)?, parse_bipoly(h, &ctx.bind)?);
        let text = format!("{}; {}", g.print_canonical(), h.print_canonical());
        match ExponentialFactor::new(&x, g, h) {
            Some(e) => {
                exp_report.push(json!({
                    "g_h": text,
                    "factor": true,
                    "cofactor": e.cofactor.print_canonical(),
                }));
                exps.push(e);
            }
            None => exp_report.push(json!({ "g_h": text, "factor": false })),
        }
    }
    rep.step(
        "cofactors",
        format!(
            "{} of {} curve(s) invariant, {} of {} exponential factor(s)",
            curves.len(),
            a.curves.len(),
            exps.len(),
            a.exps.len()
        ),
    );
    rep.artifact("curves", curve_report);
    rep.artifact("exponential_factors", exp_report);
    let mut found = Vec::new();
    for target in [Target::IntegratingFactor, Target::FirstIntegral] {
        let key = match target {
            Target::IntegratingFactor => "integrating_factor",
            Target::FirstIntegral => "first_integral",
        };
        match darboux_combination(&curves, &exps, &x, target) {
            Some(obj) => {
                if !obj.verify(&x) {
                    return Err(verification(format!("{target} combination fails")));
                }
                rep.step("combination", format!("{target}: found"));
                rep.artifact(key, object_json(&obj));
                found.push(key);
            }
            None => {
                rep.step("combination", format!("{target}: none"));
                rep.artifact(key, Value::Null);
            }
        }
    }
    rep.verdict("found", found);
    Ok(rep)
}

// ------------------------------------------------------------------ apply

fn s_params(ctx: &Ctx, a: &SArgs) -> Result<S1Params> {
    Ok(S1Params {
        eps: scalar(ctx, &a.eps)?,
        lambda: scalar(ctx, &a.lambda)?,
        b20: scalar(ctx, &a.b20)?,
        b11: scalar(ctx, &a.b11)?,
        b02: scalar(ctx, &a.b02)?,
    })
}

fn s_input(rep: &mut Report, p: &S1Params) {
    rep.input("eps", p.eps.to_text());
    rep.input("lambda", p.lambda.to_text());
    rep.input("b20", p.b20.to_text());
    rep.input("b11", p.b11.to_text());
    rep.input("b02", p.b02.to_text());
}

pub fn apply(ctx: &Ctx, p: &Pipeline) -> Result<Report> {
    match p {
        Pipeline::S1(a) => {
            let mut rep = Report::new("apply s1");
            let p = s_params(ctx, a)?;
            s_input(&mut rep, &p);
            rep.artifact("field", p.s1_field()?.print_canonical());
            let r = s1_analyze(&p, &ctx.tower)?;
            rep.steps(&r.trace);
            rep.artifact("discriminant", r.discriminant.to_text());
            rep.artifact("sqrt_discriminant", r.sqrt_discriminant.to_text());
            rep.artifact("kappa", r.whittaker.kappa.to_text());
            rep.artifact("mu", r.whittaker.mu.to_text());
            put_verdict(&mut rep, &r.martinet_ramis);
            rep.verdict("odd_integer", r.odd_integer);
            rep.verdict("a1", r.a1);
            rep.verdict("b1", r.b1);
            cross_check(ctx, &mut rep, &r.martinet_ramis, &r.rho)?;
            Ok(rep)
        }
        Pipeline::S2(a) => {
            let mut rep = Report::new("apply s2");
            let p = s_params(ctx, a)?;
            s_input(&mut rep, &p);
            rep.artifact("field", p.s2_field()?.print_canonical());
            let c = s2_classify(&p);
            rep.verdict("class", c.to_string());
            rep.verdict("clause", c.clause());
            rep.step("classify", c.to_string());
            Ok(rep)
        }
        Pipeline::Lienard1 { a, b, c, m, k } => {
            let mut rep = Report::new("apply lienard1");
            let p = Lienard1Params {
                a: scalar(ctx, a)?,
                b: scalar(ctx, b)?,
                c: scalar(ctx, c)?,
                m: scalar(ctx, m)?,
                k: scalar(ctx, k)?,
            };
            for (name, v) in [("a", &p.a), ("b", &p.b), ("c", &p.c), ("m", &p.m), ("k", &p.k)] {
                rep.input(name, v.to_text());
            }
            let r = lienard1_reduce(&p, &ctx.tower)?;
            rep.steps(&r.trace);
            rep.artifact("mu", r.mu.to_text());
            rep.artifact("nu_quadratic", r.nu_quadratic.to_text("nu"));
            rep.artifact("nu", r.nu.iter().map(Scalar::to_text).collect::<Vec<_>>());
            rep.artifact(
                "exponent_differences",
                vec![r.exponents.lambda.to_text(), r.exponents.mu.to_text(), r.exponents.nu.to_text()],
            );
            put_verdict(&mut rep, &r.verdict);
            if let Some(nu) = r.nu.first() {
                cross_check(ctx, &mut rep, &r.verdict, &legendre_rho(&r.mu, nu))?;
            }
            Ok(rep)
        }
        Pipeline::Abel { a, b, c, alpha, beta, gamma } => {
            let mut rep = Report::new("apply abel");
            let p = AbelLienardParams {
                a: scalar(ctx, a)?,
                b: scalar(ctx, b)?,
                c: scalar(ctx, c)?,
                alpha: scalar(ctx, alpha)?,
                beta: scalar(ctx, beta)?,
                gamma: scalar(ctx, gamma)?,
            };
            for (name, v) in [
                ("a", &p.a),
                ("b", &p.b),
                ("c", &p.c),
                ("alpha", &p.alpha),
                ("beta", &p.beta),
                ("gamma", &p.gamma),
            ] {
                rep.input(name, v.to_text());
            }
            let r = abel_lienard_reduce(&p, &ctx.tower)?;
            rep.steps(&r.trace);
            if let Some(bc) = &r.biconfluent {
                rep.artifact(
                    "biconfluent",
                    vec![bc.delta0.to_text(), bc.delta1.to_text(), bc.delta2.to_text(), bc.delta3.to_text()],
                );
            }
            if let Some(s) = &r.scaling {
                rep.artifact("scaling", s.to_text());
            }
            put_verdict(&mut rep, &r.verdict);
            cross_check(ctx, &mut rep, &r.verdict, &r.rho)?;
            Ok(rep)
        }
        Pipeline::Examples => {
            let mut rep = Report::new("apply examples");
            let ex = worked_examples(&ctx.tower)?;
            let mut items = Vec::new();
            for e in &ex {
                if !e.verified || !e.result.verify(&e.rho) {
                    return Err(verification(format!("worked example {} fails", e.name)));
                }
                rep.step(&e.name, format!("{}: case {}", e.params, e.result.case_number()));
                items.push(json!({
                    "name": e.name,
                    "params": e.params,
                    "rho": e.rho.print_canonical(),
                    "case": e.result.case_number(),
                    "first_integral": e.first_integral,
                }));
            }
            rep.verdict("cases", ex.iter().map(|e| e.result.case_number()).collect::<Vec<_>>());
            rep.artifact("examples", items);
            Ok(rep)
        }
        Pipeline::Orth { family, n, m, nu, mu } => {
            let mut rep = Report::new("apply orth");
            let fam = OrthFamily::from_tag(family)
                .ok_or_else(|| Error::Invalid(format!("unknown orthogonal family `{family}`")))?;
            let (m, nu, mu) = (scalar(ctx, m)?, scalar(ctx, nu)?, scalar(ctx, mu)?);
            rep.input("family", fam.tag());
            rep.input("n", *n);
            rep.input("m", m.to_text());
            rep.input("nu", nu.to_text());
            rep.input("mu", mu.to_text());
            let row = fam.row(*n, &m, &nu);
            let c = orth_invariant_curve(&row, &mu)?;
            if cofactor_of(&c.field, &c.curve.f).as_ref() != Some(&c.curve.cofactor) {
                return Err(verification("orthogonal curve is not invariant"));
            }
            if !c.reduction.verify() {
                return Err(verification("orthogonal reduction fails"));
            }
            rep.step("curve", "invariant");
            rep.step("reduction", "xi'' = rho xi verified");
            rep.artifact("field", c.field.print_canonical());
            rep.artifact("polynomial", c.reduction.p.print_canonical());
            rep.artifact("curve", c.curve.f.print_canonical());
            rep.artifact("cofactor", c.curve.cofactor.print_canonical());
            rep.artifact("rho", c.reduction.ode.rho.print_canonical());
            rep.verdict("invariant", true);
            Ok(rep)
        }
    }
}
