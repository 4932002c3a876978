use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::exactalg::{Point, Scalar, Tower};
use crate::{Poly, RatFunc};

use super::local::LocalData;
use super::{is_riccati_invariant, local_data, monic_kernel_element, KovacicResult, OmegaPoly, TraceEntry};

fn e_set(d: &LocalData) -> BTreeSet<i64> {
    let o = d.point.order;
    let from_b = |d: &LocalData| -> BTreeSet<i64> {
        let mut s = BTreeSet::from([2]);
        if let Some(root) = d.rational_root.as_ref() {
            for k in [2, -2] {
                if let Some(e) = (Scalar::int(2) + Scalar::int(k) * root).to_i64() {
                    s.insert(e);
                }
            }
        }
        s
    };
    match d.point.point {
        Point::Finite(_) => match o {
            1 => BTreeSet::from([4]),
            2 => from_b(d),
            v => BTreeSet::from([v]),
        },
        Point::Infinity => {
            if o > 2 {
                BTreeSet::from([0, 2, 4])
            } else if o == 2 {
                from_b(d)
            } else {
                BTreeSet::from([o])
            }
        }
    }
}

/// `theta'' + 3 theta theta' + theta^3 - 4 r theta - 2 r'` etc.; applies the
/// third-order operator to `p`.
fn operator(r: &RatFunc, theta: &RatFunc, p: &Poly) -> RatFunc {
    let c = |k: i64| RatFunc::constant(Scalar::int(k));
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let d3 = d2.derivative();
    let th1 = theta.derivative();
    let th2 = th1.derivative();
    let a2 = &c(3) * theta;
    let a1 = &(&(&c(3) * &th1) + &(&(&c(3) * theta) * theta)) - &(&c(4) * r);
    let a0 = &(&(&(&th2 + &(&(&c(3) * theta) * &th1)) + &(&(theta * theta) * theta))
        - &(&(&c(4) * r) * theta))
        - &(&c(2) * &r.derivative());
    let f = |q: &Poly| RatFunc::from_poly(q.clone());
    &(&(&f(&d3) + &(&a2 * &f(&d2))) + &(&a1 * &f(&d1))) + &(&a0 * &f(p))
}

/// `omega^2 - phi omega + (phi' + phi^2 - 2r)/2` with `phi = theta + P'/P`.
fn quadratic(r: &RatFunc, theta: &RatFunc, p: &Poly, sign: i64) -> OmegaPoly {
    let phi = theta + &super::log_derivative(p);
    let c0 = (&(&phi.derivative() + &(&phi * &phi)) - &r.scale(&Scalar::int(2)))
        .scale(&Scalar::ratio(1, 2));
    OmegaPoly::new(vec![c0, phi.scale(&Scalar::int(sign)), RatFunc::one()])
}

/// Quadratic for `omega` in the form printed with `+phi`; its roots are the
/// negatives of Riccati solutions, kept for the comparison test.
pub fn printed_quadratic(r: &RatFunc, theta: &RatFunc, p: &Poly) -> OmegaPoly {
    quadratic(r, theta, p, 1)
}

pub fn case2(r: &RatFunc) -> Result<Option<KovacicResult>> {
    let locals = local_data(r, &Tower::default())?;
    case2_with(r, &locals, &mut Vec::new())
}

pub(crate) fn case2_with(
    r: &RatFunc,
    locals: &[LocalData],
    trace: &mut Vec<TraceEntry>,
) -> Result<Option<KovacicResult>> {
    let sets: Vec<Vec<i64>> = locals.iter().map(|d| e_set(d).into_iter().collect()).collect();
    let k = sets.len();
    let mut cands: Vec<(usize, Vec<i64>)> = Vec::new();
    for choice in super::cartesian(&sets) {
        let sum_c: i64 = choice[..k - 1].iter().sum();
        let diff = choice[k - 1] - sum_c;
        if diff >= 0 && diff % 2 == 0 {
            cands.push(((diff / 2) as usize, choice));
        }
    }
    cands.sort_by_key(|(m, _)| *m);

    for (m, choice) in cands {
        let mut theta = RatFunc::zero();
        for (d, e) in locals.iter().zip(&choice) {
            if let Point::Finite(c) = &d.point.point {
                theta = &theta + &RatFunc::inv_linear_pow(c, 1).scale(&Scalar::ratio(*e, 2));
            }
        }
        let images: Vec<RatFunc> = (0..=m)
            .map(|j| operator(r, &theta, &Poly::monomial(Scalar::one(), j)))
            .collect();
        let found = monic_kernel_element(&images);
        trace.push(TraceEntry {
            case: 2,
            n: None,
            m,
            choice: describe(locals, &choice),
            found: found.is_some(),
        });
        let Some(p) = found else { continue };
        if !operator(r, &theta, &p).is_zero() {
            continue;
        }
        let omega_poly = quadratic(r, &theta, &p, -1);
        if !is_riccati_invariant(r, &omega_poly) {
            continue;
        }
        return Ok(Some(KovacicResult::Case2 {
            m,
            e: locals.iter().map(|d| d.point.point.clone()).zip(choice).collect(),
            theta,
            p,
            omega_poly,
        }));
    }
    Ok(None)
}

pub(crate) fn describe(locals: &[LocalData], choice: &[i64]) -> String {
    locals
        .iter()
        .zip(choice)
        .map(|(l, e)| format!("{}:{e}", l.point.point))
        .collect::<Vec<_>>()
        .join(",")
}

/// Cubic-operator check used by the soundness suite.
pub fn verify_case2(r: &RatFunc, theta: &RatFunc, p: &Poly) -> bool {
    operator(r, theta, p).is_zero()
}
