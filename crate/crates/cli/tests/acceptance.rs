//! Acceptance suite: one PASS/FAIL line per criterion.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use riccati_galois::applications::{
    legendre_verdict, lien_field, lienard1_reduce, orth_invariant_curve, s1_analyze, worked_examples, Lienard1Params,
    S1Params,
};
use riccati_galois::darboux::{cofactor_of, integrating_factor_from_solution};
use riccati_galois::exactalg::{BiPoly, Tower};
use riccati_galois::exprparse::{parse_ratfunc, parse_scalar, parse_vectorfield, Bindings, Canonical};
use riccati_galois::kovacic::{is_riccati_invariant, solve_rlde_traced, KovacicResult};
use riccati_galois::odeforms::{transform_b, transform_s, transform_t, vric_field, ReducedODE, RiccatiGeneral};
use riccati_galois::specialfn::{
    bessel_ode, bessel_test, biconfluent_heun_test, kimura_test, martinet_ramis_test, orth_reduced_rho,
    pi_determinant, BiconfluentParams, ExponentDiffs, OrthFamily, Verdict, WhittakerParams,
};
use riccati_galois::{Poly, RatFunc, Scalar};

const SEED: u64 = 0x5eed_2a11;
const BIN: &str = env!("CARGO_BIN_EXE_riccati-galois");

/// Hand-written reduced equations; everything else in the corpus is generated.
const RHO_TEXTS: &[&str] = &[
    "x^2 - 1",
    "x^2 + 3",
    "x",
    "x^3 + 1",
    "x^4 + 2*x",
    "2/x^2",
    "-3/(16*x^2)",
    "1/4 - 3/(2*x) + 3/(4*x^2)",
    "-1 + 2/x^2",
    "(4*x^4 - x^3 + 3/4)/x^2",
    "x^2 - 2*sqrt(2)*x + 1",
    "1/(x - sqrt(2))^2 * (-1/4)",
    "6/x^2 + 1",
    "-3/(16*x^2) - 2/(9*(x-1)^2) + (3/16 + 2/9 - 143/144)/(x*(x-1))",
    "x^6 + 3*x^2",
    "(x^2 - 1)^(-2) * (-3/4)",
];

const FIELD_TEXTS: &[&str] = &["x; e*x + l*y", "1; 0", "y; x^3", "1; x^2 - 1 - y^2", "x^2; 2 - x^2*y^2"];
const SCALAR_TEXTS: &[&str] = &["3/4", "(1+2*sqrt(5))/3", "-sqrt(2)/4", "2*sqrt(-1)", "1/2 + sqrt(3)"];

fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

fn rho(src: &str) -> RatFunc {
    parse_ratfunc(src, "x", &Bindings::new()).unwrap()
}

fn solve(r: &RatFunc) -> KovacicResult {
    solve_rlde_traced(&ReducedODE { rho: r.clone() }, &Tower::default()).unwrap().0
}

fn random_q(rng: &mut ChaCha8Rng, lo: i64, hi: i64, dmax: i64) -> Scalar {
    q(rng.gen_range(lo..=hi), rng.gen_range(1..=dmax))
}

struct Line {
    ok: bool,
    text: String,
}

type Check<'a> = Box<dyn Fn() -> Line + 'a>;

fn line(ok: bool, text: impl Into<String>) -> Line {
    Line { ok, text: text.into() }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

/// Every reduced equation the suite touches, with a label.
fn corpus() -> Vec<(String, RatFunc)> {
    let mut out: Vec<(String, RatFunc)> = RHO_TEXTS.iter().map(|s| (s.to_string(), rho(s))).collect();
    for n in bessel_orders() {
        out.push((format!("bessel n={n}"), transform_s(&bessel_ode(&n)).0.rho));
    }
    for (k, m) in whittaker_grid() {
        out.push((format!("whittaker {k},{m}"), WhittakerParams { kappa: k, mu: m }.rho()));
    }
    for fam in OrthFamily::ALL {
        for n in 0..=5 {
            let row = fam.row(n, &Scalar::one(), &Scalar::one());
            out.push((format!("{} n={n}", fam.tag()), orth_reduced_rho(&row).unwrap().ode.rho));
        }
    }
    for e in worked_examples(&Tower::default()).unwrap() {
        out.push((format!("{} {}", e.name, e.params), e.rho));
    }
    for (d1, d2) in [(0, 1), (0, -3), (1, 5), (-2, 3)] {
        let p = BiconfluentParams::new([Scalar::one(), Scalar::int(d1), Scalar::int(d2), Scalar::zero()]);
        out.push((format!("biconfluent d1={d1} d2={d2}"), p.rho()));
    }
    out
}

fn bessel_orders() -> Vec<Scalar> {
    vec![q(0, 1), q(1, 1), q(2, 1), q(1, 2), q(3, 2), q(5, 2), q(-1, 2)]
}

fn whittaker_grid() -> Vec<(Scalar, Scalar)> {
    let vals = [q(0, 1), q(1, 4), q(-1, 4), q(1, 2), q(-1, 2), q(3, 2), q(-3, 2)];
    let mut out = Vec::new();
    for k in &vals {
        for m in &vals {
            out.push((k.clone(), m.clone()));
        }
    }
    out
}

// 1
fn kovacic_soundness(corpus: &[(String, RatFunc)], results: &[KovacicResult], times: &[Duration]) -> Line {
    let mut counts = [0usize; 4];
    let mut bad = Vec::new();
    for ((name, r), res) in corpus.iter().zip(results) {
        counts[res.case_number() as usize - 1] += 1;
        if !res.verify(r) {
            bad.push(name.clone());
        }
    }
    let slowest = times.iter().max().copied().unwrap_or_default();
    let ok = bad.is_empty() && slowest < Duration::from_secs(1);
    line(
        ok,
        format!(
            "{} instances, cases 1/2/3/4 = {}/{}/{}/{}, identity failures {:?}, slowest {}",
            corpus.len(),
            counts[0],
            counts[1],
            counts[2],
            counts[3],
            bad,
            secs(slowest)
        ),
    )
}

// 2
fn bessel() -> Line {
    let mut ok = true;
    let mut slowest = Duration::ZERO;
    let mut seen = Vec::new();
    for n in bessel_orders() {
        let t = Instant::now();
        let half_integer = (&n - &q(1, 2)).is_integer();
        let v = bessel_test(&n).is_integrable();
        let k = solve(&transform_s(&bessel_ode(&n)).0.rho).is_liouvillian();
        slowest = slowest.max(t.elapsed());
        ok &= v == half_integer && k == half_integer;
        seen.push(format!("{n}:{}", if v { "I" } else { "N" }));
    }
    ok &= slowest < Duration::from_secs(1);
    line(ok, format!("{}, slowest {}", seen.join(" "), secs(slowest)))
}

// 3
fn whittaker() -> Line {
    let t = Instant::now();
    let mut agree = 0;
    let mut integrable = 0;
    let grid = whittaker_grid();
    for (k, m) in &grid {
        let p = WhittakerParams { kappa: k.clone(), mu: m.clone() };
        let v = martinet_ramis_test(&p).is_integrable();
        integrable += v as usize;
        agree += (v == solve(&p.rho()).is_liouvillian()) as usize;
    }
    let el = t.elapsed();
    line(
        agree == grid.len() && el < Duration::from_secs(30),
        format!("{agree}/{} agree ({integrable} integrable), {}", grid.len(), secs(el)),
    )
}

// 4
fn airy() -> Line {
    let t = Instant::now();
    let a = solve(&rho("x")).case_number();
    let b = solve(&rho("x^3 + 1")).case_number();
    let el = t.elapsed();
    line(a == 4 && b == 4 && el < Duration::from_secs(1), format!("rho=x case {a}, rho=x^3+1 case {b}, {}", secs(el)))
}

fn random_poly(rng: &mut ChaCha8Rng) -> Poly {
    let deg = rng.gen_range(0..=3);
    Poly::new((0..=deg).map(|_| Scalar::int(rng.gen_range(-3..=3))).collect())
}

fn random_ratfunc(rng: &mut ChaCha8Rng) -> RatFunc {
    loop {
        let (n, d) = (random_poly(rng), random_poly(rng));
        if !d.is_zero() {
            return RatFunc::new(n, d);
        }
    }
}

// 5
fn commutation() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let t = Instant::now();
    let mut agree = 0;
    let mut drawn = 0;
    while drawn < 100 {
        let (a0, a1, a2) = (random_ratfunc(&mut rng), random_ratfunc(&mut rng), random_ratfunc(&mut rng));
        let Ok(g) = RiccatiGeneral::new(a0, a1, a2) else { continue };
        drawn += 1;
        let r = transform_t(&g).0.r;
        let via = transform_s(&transform_b(&g)).0.rho;
        agree += (r == via) as usize;
    }
    let el = t.elapsed();
    line(agree == 100 && el < Duration::from_secs(10), format!("{agree}/100 exact, {}", secs(el)))
}

// 6
fn orthogonal() -> Line {
    let t = Instant::now();
    let (m, nu) = (Scalar::one(), Scalar::one());
    let mut passed = 0;
    let mut total = 0;
    for fam in OrthFamily::ALL {
        for n in 0..=5 {
            let row = fam.row(n, &m, &nu);
            let pn = row.polynomial().unwrap();
            for mu in [q(1, 1), q(-2, 3)] {
                total += 1;
                // mu v P_n + Q P_n'
                let f = &(&BiPoly::from_x_poly(&pn.scale(&mu)) * &BiPoly::y())
                    + &BiPoly::from_x_poly(&(&row.q * &pn.derivative()));
                let field = lien_field(&row, &mu).unwrap();
                let invariant = cofactor_of(&field, &f).is_some();
                let red = orth_reduced_rho(&row).unwrap();
                let same = orth_invariant_curve(&row, &mu).is_ok_and(|c| c.curve.f == f);
                passed += (invariant && red.verify() && red.p == pn && same) as usize;
            }
        }
    }
    let el = t.elapsed();
    line(
        passed == total && el < Duration::from_secs(60),
        format!("{passed}/{total} (9 families, n = 0..5, two values of mu), {}", secs(el)),
    )
}

// 7
fn integrating_factor(corpus: &[(String, RatFunc)], results: &[KovacicResult]) -> Line {
    let mut total = 0;
    let mut passed = 0;
    for ((_, r), res) in corpus.iter().zip(results) {
        let Some(w1) = res.riccati_solution() else { continue };
        total += 1;
        let vf = vric_field(r);
        passed += integrating_factor_from_solution(&w1, &vf).is_ok_and(|mu| mu.is_integrating_factor(&vf)) as usize;
    }
    line(passed == total && total > 0, format!("{passed}/{total} Case 1 solutions"))
}

fn laplace_det(m: &[Vec<Scalar>]) -> Scalar {
    if m.is_empty() {
        return Scalar::one();
    }
    let mut acc = Scalar::zero();
    for j in 0..m.len() {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Scalar>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][j] * &laplace_det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

// 8
fn biconfluent() -> Line {
    let t = Instant::now();
    let mut clause1 = 0;
    let mut total = 0;
    for d2 in [1, -1, 3, -3, 5, -5] {
        for d1 in [q(0, 1), q(1, 2), q(-2, 1)] {
            total += 1;
            let p = BiconfluentParams::new([Scalar::one(), d1, Scalar::int(d2), Scalar::zero()]);
            let v = biconfluent_heun_test(&p);
            let confirmed = matches!(solve(&p.rho()), KovacicResult::Case1 { .. });
            clause1 += (v.is_integrable() && v.clause.as_deref() == Some("(1)") && confirmed) as usize;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let mut det_ok = 0;
    for _ in 0..50 {
        let d = rng.gen_range(0..=5usize);
        let [a, b, u, v, xi, w] = [(); 6].map(|_| random_q(&mut rng, -5, 5, 4));
        let n = d + 1;
        let mut m = vec![vec![Scalar::zero(); n]; n];
        for k in 0..n {
            let kk = Scalar::int(k as i64);
            m[k][k] = &w + &(&kk * &(&v + &(&Scalar::int(k as i64 - 1) * &a)));
            if k + 1 < n {
                m[k][k + 1] = &Scalar::int(k as i64 + 1) * &(&u + &(&kk * &b));
            }
            if k > 0 {
                m[k][k - 1] = &Scalar::int((d + 1 - k) as i64) * &xi;
            }
        }
        det_ok += (laplace_det(&m) == pi_determinant(d, &a, &b, &u, &v, &xi, &w)) as usize;
    }
    let el = t.elapsed();
    line(
        clause1 == total && det_ok == 50 && el < Duration::from_secs(60),
        format!("clause (1) integrable and Case 1 in {clause1}/{total}, Pi determinant {det_ok}/50, {}", secs(el)),
    )
}

// 9
fn worked() -> Line {
    let t = Instant::now();
    let ex = worked_examples(&Tower::default()).unwrap();
    let find = |name: &str, params: &str| ex.iter().find(|e| e.name == name && e.params.contains(params));
    let h2 = find("hypergeometric", "1/2, 1/2, 1/2").map(|e| &e.result);
    let p3 = find("polyhedral", "1/3").map(|e| e.result.case_number());
    let p4 = find("polyhedral", "1/4").map(|e| e.result.case_number());
    let xi1_ok = match (find("hypergeometric", "1/2, 1/2, 1/2"), h2) {
        (Some(e), Some(KovacicResult::Case2 { omega_poly, .. })) => {
            is_riccati_invariant(&e.rho, omega_poly) && e.result.verify(&e.rho)
        }
        _ => false,
    };
    let c2 = h2.map(KovacicResult::case_number);
    let el = t.elapsed();
    let show = |c: Option<u8>| c.map_or("missing".to_string(), |c| c.to_string());
    line(
        c2 == Some(2) && p3 == Some(3) && p4 == Some(3) && xi1_ok && el < Duration::from_secs(120),
        format!(
            "(1/2,1/2,1/2) case {}, nu=1/3 case {}, nu=1/4 case {}, xi1 identity {xi1_ok}, {}",
            show(c2),
            show(p3),
            show(p4),
            secs(el)
        ),
    )
}

// 10
fn lienard() -> Line {
    let t = Instant::now();
    let tower = Tower::default();
    let inst = |k: i64| Lienard1Params { a: q(0, 1), b: q(1, 1), c: q(1, 1), m: q(1, 1), k: q(k, 1) };
    let mut clauses = Vec::new();
    let mut ok = true;
    for k in [1, 0] {
        match lienard1_reduce(&inst(k), &tower) {
            Ok(r) => {
                ok &= r.verdict.is_integrable() && r.verdict.clause.is_some();
                clauses.push(format!("k={k}: {}", r.verdict.clause.unwrap_or_default()));
            }
            Err(e) => {
                ok = false;
                clauses.push(format!("k={k}: {e}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 10);
    let mut agree = 0;
    for _ in 0..200 {
        let (mu, nu) = (random_q(&mut rng, -24, 24, 12), random_q(&mut rng, -24, 24, 12));
        let e = ExponentDiffs::new(mu.clone(), mu.clone(), &(&q(2, 1) * &nu) + &Scalar::one());
        agree += (legendre_verdict(&mu, &nu).verdict == kimura_test(&e).verdict) as usize;
    }
    let el = t.elapsed();
    line(
        ok && agree == 200 && el < Duration::from_secs(30),
        format!("{}, table vs Kimura {agree}/200, {}", clauses.join(", "), secs(el)),
    )
}

// 11
fn s1() -> Line {
    let t = Instant::now();
    let tower = Tower::default();
    let base = S1Params { eps: q(3, 1), lambda: q(0, 1), b20: q(0, 1), b11: q(1, 1), b02: q(0, 1) };
    let a1 = s1_analyze(&base, &tower).is_ok_and(|r| r.a1 && r.odd_integer && r.martinet_ramis.is_integrable());
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 11);
    let mut b1 = 0;
    for _ in 0..10 {
        let lambda = q(-rng.gen_range(1..=20), rng.gen_range(1..=20));
        let p = S1Params { lambda, b20: Scalar::int(rng.gen_range(-3..=3)), ..base.clone() };
        b1 += s1_analyze(&p, &tower).is_ok_and(|r| {
            r.b1 && r.odd_integer && r.martinet_ramis.verdict == Verdict::Integrable
        }) as usize;
    }
    let el = t.elapsed();
    line(
        a1 && b1 == 10 && el < Duration::from_secs(10),
        format!("(a1) {a1}, (b1) {b1}/10, {}", secs(el)),
    )
}

// 12
fn cli_round_trip(corpus: &[(String, RatFunc)]) -> Line {
    let b = Bindings::new();
    let mut fix = 0;
    let mut total = 0;
    let mut texts: Vec<String> = RHO_TEXTS.iter().map(|s| s.to_string()).collect();
    texts.extend(corpus.iter().map(|(_, r)| r.print_canonical()));
    for src in &texts {
        total += 1;
        let a = parse_ratfunc(src, "x", &b).unwrap();
        let t = a.print_canonical();
        let again = parse_ratfunc(&t, "x", &b).unwrap();
        fix += (again == a && again.print_canonical() == t) as usize;
    }
    let mut fb = Bindings::new();
    fb.insert("e".into(), q(2, 1));
    fb.insert("l".into(), q(-1, 3));
    for src in FIELD_TEXTS {
        total += 1;
        let a = parse_vectorfield(src, &fb).unwrap();
        let t = a.print_canonical();
        let again = parse_vectorfield(&t, &fb).unwrap();
        fix += (again == a && again.print_canonical() == t) as usize;
    }
    for src in SCALAR_TEXTS {
        total += 1;
        let a = parse_scalar(src, &b).unwrap();
        let again = parse_scalar(&a.print_canonical(), &b).unwrap();
        fix += (again == a) as usize;
    }
    let invocations: &[&[&str]] = &[
        &["solve", "--rho", "x^2-1"],
        &["solve", "--b1", "1/x", "--b0", "(x^2-1/4)/x^2"],
        &["solve", "a0=x^2; a1=1/x; a2=x"],
        &["criteria", "kimura", "--l", "1/2", "--m", "1/2", "--n", "1/5"],
        &["darboux", "--field", "1; x^2 - 1 - y^2", "--curve", "-y - x", "--exp", "1/2*x^2; 1"],
        &["apply", "examples"],
    ];
    let mut same = 0;
    for args in invocations {
        let go = |fmt: &str| {
            Command::new(BIN).args(*args).args([fmt, "--no-timing"]).output().map(|o| (o.status.success(), o.stdout))
        };
        let pair = (go("--json"), go("--json"), go("--text"), go("--text"));
        if let (Ok(a), Ok(b), Ok(c), Ok(d)) = pair {
            same += (a.0 && a == b && c == d) as usize;
        }
    }
    line(
        fix == total && same == invocations.len(),
        format!("fixpoint {fix}/{total}, byte-identical reruns {same}/{}", invocations.len()),
    )
}

fn main() {
    let mut out = std::io::stdout();
    let corpus = corpus();
    let mut results = Vec::new();
    let mut times = Vec::new();
    for (_, r) in &corpus {
        let t = Instant::now();
        results.push(solve(r));
        times.push(t.elapsed());
    }
    let lines: Vec<(&str, Check)> = vec![
        ("Kovacic soundness", Box::new(|| kovacic_soundness(&corpus, &results, &times))),
        ("Bessel orders", Box::new(bessel)),
        ("Whittaker grid", Box::new(whittaker)),
        ("Airy", Box::new(airy)),
        ("transformation commutation", Box::new(commutation)),
        ("orthogonal-family curves", Box::new(orthogonal)),
        ("integrating-factor lemma", Box::new(|| integrating_factor(&corpus, &results))),
        ("biconfluent Heun", Box::new(biconfluent)),
        ("worked examples", Box::new(worked)),
        ("Lienard family", Box::new(lienard)),
        ("S1 system", Box::new(s1)),
        ("CLI determinism and round trip", Box::new(|| cli_round_trip(&corpus))),
    ];
    let mut failed = 0;
    for (i, (name, f)) in lines.iter().enumerate() {
        let l = f();
        failed += !l.ok as usize;
        let tag = if l.ok { "PASS" } else { "FAIL" };
        writeln!(out, "acceptance {:>2} {tag} {name}: {}", i + 1, l.text).unwrap();
    }
    writeln!(out, "acceptance: {} of {} criteria pass", lines.len() - failed, lines.len()).unwrap();
    out.flush().unwrap();
    if failed > 0 {
        std::process::exit(1);
    }
}
