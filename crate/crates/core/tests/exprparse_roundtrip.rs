use num_traits::Zero;
use proptest::prelude::*;
use riccati_galois::exactalg::BiPoly;
use riccati_galois::exprparse::*;
use riccati_galois::{Error, Poly, RatFunc, Scalar};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..10, 1i64..6, -4i64..5, prop_oneof![Just(2i64), Just(3), Just(-1), Just(-3)]).prop_map(
        |(a, d, b, rad)| &Scalar::ratio(a, d) + &(&Scalar::ratio(b, d) * &Scalar::sqrt_int(rad)),
    )
}

fn poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec(scalar(), 0..4).prop_map(Poly::new)
}

fn text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (0i64..20).prop_map(|n| n.to_string()),
        Just("x".to_string()),
        (-5i64..6).prop_map(|n| format!("sqrt({n})")),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) + ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} - {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})/({b})")),
            (inner.clone(), -3i64..4).prop_map(|(a, e)| format!("({a})^({e})")),
            inner.prop_map(|a| format!("-({a})")),
        ]
    })
}

proptest! {
    #[test]
    fn ratfunc_round_trip(n in poly(), d in poly()) {
        prop_assume!(!d.is_zero());
        let r = RatFunc::new(n, d);
        let b = Bindings::new();
        let back = parse_ratfunc(&r.print_canonical(), "x", &b).unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn print_parse_idempotent(src in text()) {
        let b = Bindings::new();
        match parse_ratfunc(&src, "x", &b) {
            Ok(r) => {
                let t = r.print_canonical();
                let again = parse_ratfunc(&t, "x", &b).unwrap();
                prop_assert_eq!(again.print_canonical(), t);
                prop_assert_eq!(again, r);
            }
            Err(Error::Invalid(_)) | Err(Error::Unsupported(_)) | Err(Error::Syntax { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn bipoly_round_trip(terms in proptest::collection::vec(((0u32..4, 0u32..4), scalar()), 0..6)) {
        let p = BiPoly::from_terms(terms);
        let back = parse_bipoly(&p.print_canonical(), &Bindings::new()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn scalar_round_trip(s in scalar()) {
        prop_assert_eq!(parse_scalar(&s.print_canonical(), &Bindings::new()).unwrap(), s);
    }
}
