use riccati_galois::exactalg::{Scalar, Tower};
use riccati_galois::kovacic::*;
use riccati_galois::odeforms::{transform_s, ReducedODE, SecondOrderODE};
use riccati_galois::{Poly, RatFunc};

fn lin(c: i64) -> Poly {
    Poly::new(vec![Scalar::int(-c), Scalar::int(1)])
}

fn hyper(l: Scalar, m: Scalar, n: Scalar) -> RatFunc {
    let x = Poly::x();
    let one = Scalar::int(1);
    let four = Scalar::int(4);
    let t1 = RatFunc::new(Poly::constant(&l * &l - &one), (&x * &x).scale(&four));
    let t2 = RatFunc::new(Poly::constant(&m * &m - &one), (&lin(1) * &lin(1)).scale(&four));
    let c3 = &(&(&n * &n + &one) - &(&l * &l)) - &(&m * &m);
    let t3 = RatFunc::new(Poly::constant(c3), (&x * &lin(1)).scale(&four));
    &(&t1 + &t2) + &t3
}

fn weil2(nu: Scalar) -> RatFunc {
    let xx1 = &Poly::x() * &lin(1);
    let b1 = RatFunc::new(Poly::new(vec![Scalar::int(-4), Scalar::int(7)]), xx1.scale(&Scalar::int(6)));
    let b0 = RatFunc::new(
        Poly::constant(-(Scalar::int(36) * &nu * &nu - Scalar::int(1))),
        xx1.scale(&Scalar::int(144)),
    );
    transform_s(&SecondOrderODE { b1, b0 }).0.rho
}

#[test]
fn dihedral_quadratic_sign() {
    let half = Scalar::ratio(1, 2);
    for n in [2, 3] {
        let r = hyper(half.clone(), half.clone(), Scalar::ratio(1, n));
        let res = solve_rlde(&ReducedODE { rho: r.clone() }).unwrap();
        let KovacicResult::Case2 { theta, p, omega_poly, .. } = &res else {
            panic!("expected Case 2 for n = {n}, got {res:?}");
        };
        assert!(verify_case2(&r, theta, p));
        assert!(is_riccati_invariant(&r, omega_poly));
        assert!(!is_riccati_invariant(&r, &printed_quadratic(&r, theta, p)));
    }
}

#[test]
fn polyhedral_groups() {
    for nu in [3, 4, 5] {
        let r = weil2(Scalar::ratio(1, nu));
        let res = solve_rlde(&ReducedODE { rho: r.clone() }).unwrap();
        let KovacicResult::Case3 { n, theta, s, p, omega_poly, .. } = &res else {
            panic!("expected Case 3 for nu = 1/{nu}, got {res:?}");
        };
        assert!(verify_case3(&r, *n, s, theta, p));
        assert!(is_riccati_invariant(&r, omega_poly));
        assert_eq!(omega_poly.degree(), Some(*n));
    }
    let third = Scalar::ratio(1, 3);
    let r = hyper(third.clone(), Scalar::ratio(1, 2), third);
    assert_eq!(solve_rlde(&ReducedODE { rho: r }).unwrap().case_number(), 3);
}

#[test]
fn case4_trace_is_exhaustive() {
    let r = RatFunc::from_poly(Poly::new(vec![Scalar::int(1), Scalar::int(0), Scalar::int(0), Scalar::int(1)]));
    let (res, trace) = solve_rlde_traced(&ReducedODE { rho: r }, &Tower::default()).unwrap();
    assert_eq!(res, KovacicResult::Case4);
    assert!(trace.iter().all(|t| !t.found));
}

#[test]
fn triconfluent_zero_parameters() {
    let r = RatFunc::from_poly(Poly::new(vec![
        Scalar::int(0),
        Scalar::int(0),
        Scalar::int(0),
        Scalar::int(0),
        Scalar::ratio(9, 4),
    ]));
    assert_eq!(solve_rlde(&ReducedODE { rho: r }).unwrap(), KovacicResult::Case4);
}
