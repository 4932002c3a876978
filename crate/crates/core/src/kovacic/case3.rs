use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::exactalg::{Point, Scalar, Tower};
use crate::{Poly, RatFunc};

use super::case2::describe;
use super::local::LocalData;
use super::{cartesian, is_riccati_invariant, local_data, monic_kernel_element, KovacicResult, OmegaPoly, TraceEntry};

const NS: [usize; 3] = [4, 6, 12];

fn e_set(d: &LocalData, n: usize) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    let scale = match d.point.point {
        Point::Finite(_) if d.point.order == 1 => return BTreeSet::from([12]),
        Point::Finite(_) => Scalar::one(),
        Point::Infinity => Scalar::ratio(12, n as i64),
    };
    let root = if d.point.point == Point::Infinity && d.point.order > 2 {
        Some(Scalar::one())
    } else {
        d.rational_root.clone()
    };
    match root {
        Some(s) => {
            for k in -6..=6 {
                let e = Scalar::int(6) + Scalar::int(k) * &scale * &s;
                if let Some(e) = e.to_i64() {
                    out.insert(e);
                }
            }
        }
        None => {
            out.insert(6);
        }
    }
    out
}

/// `P_{-1}` of the downward recursion started at `P_n = -P`, together with
/// all `P_i` (index `i + 1`).
fn recursion(n: usize, s: &Poly, s_theta: &Poly, s2r: &Poly, p: &Poly) -> Vec<Poly> {
    let ds = s.derivative();
    // ps[i + 1] = P_i, i = -1..=n, plus P_{n+1} = 0
    let mut ps = vec![Poly::zero(); n + 3];
    ps[n + 1] = -p;
    for i in (0..=n).rev() {
        let pi = ps[i + 1].clone();
        let pnext = ps[i + 2].clone();
        let ni = Scalar::int((n - i) as i64);
        let t1 = -(s * &pi.derivative());
        let t2 = &(&ds.scale(&ni) - s_theta) * &pi;
        let t3 = -(&(s2r * &pnext).scale(&(&ni * &Scalar::int(i as i64 + 1))));
        ps[i] = &(&t1 + &t2) + &t3;
    }
    ps.truncate(n + 2);
    ps
}

pub fn case3(r: &RatFunc) -> Result<Option<KovacicResult>> {
    let locals = local_data(r, &Tower::default())?;
    case3_with(r, &locals, &mut Vec::new())
}

pub(crate) fn case3_with(
    r: &RatFunc,
    locals: &[LocalData],
    trace: &mut Vec<TraceEntry>,
) -> Result<Option<KovacicResult>> {
    let (finite, inf): (Vec<_>, Vec<_>) = locals
        .iter()
        .partition(|d| matches!(d.point.point, Point::Finite(_)));
    if finite.iter().any(|d| d.point.order > 2) || inf[0].point.order < 2 {
        return Ok(None);
    }
    let mut s = Poly::one();
    for d in &finite {
        if let Point::Finite(c) = &d.point.point {
            s = &s * &Poly::linear_root(c.clone());
        }
    }
    let s2r = (&RatFunc::from_poly(&s * &s) * r)
        .as_poly()
        .expect("poles of order <= 2 are cleared by S^2");
    let k = locals.len();
    for n in NS {
        let sets: Vec<Vec<i64>> = locals.iter().map(|d| e_set(d, n).into_iter().collect()).collect();
        let mut cands = Vec::new();
        for choice in cartesian(&sets) {
            let sum_c: i64 = choice[..k - 1].iter().sum();
            let num = n as i64 * (choice[k - 1] - sum_c);
            if num >= 0 && num % 12 == 0 {
                cands.push(((num / 12) as usize, choice));
            }
        }
        cands.sort_by_key(|(m, _)| *m);
        for (m, choice) in cands {
            let mut theta = RatFunc::zero();
            for (d, e) in locals.iter().zip(&choice) {
                if let Point::Finite(c) = &d.point.point {
                    theta = &theta
                        + &RatFunc::inv_linear_pow(c, 1).scale(&Scalar::ratio(n as i64 * e, 12));
                }
            }
            let s_theta = (&RatFunc::from_poly(s.clone()) * &theta).as_poly().unwrap();
            let images: Vec<RatFunc> = (0..=m)
                .map(|j| {
                    let ps = recursion(n, &s, &s_theta, &s2r, &Poly::monomial(Scalar::one(), j));
                    RatFunc::from_poly(ps[0].clone())
                })
                .collect();
            let found = monic_kernel_element(&images);
            trace.push(TraceEntry {
                case: 3,
                n: Some(n),
                m,
                choice: describe(locals, &choice),
                found: found.is_some(),
            });
            let Some(p) = found else { continue };
            let ps = recursion(n, &s, &s_theta, &s2r, &p);
            if !ps[0].is_zero() {
                continue;
            }
            let omega_poly = omega_polynomial(n, &s, &ps);
            if !is_riccati_invariant(r, &omega_poly) {
                continue;
            }
            return Ok(Some(KovacicResult::Case3 {
                n,
                m,
                e: locals.iter().map(|d| d.point.point.clone()).zip(choice).collect(),
                theta,
                s,
                p,
                omega_poly,
            }));
        }
    }
    Ok(None)
}

/// `sum_i S^i P_i omega^i / (n - i)!`
fn omega_polynomial(n: usize, s: &Poly, ps: &[Poly]) -> OmegaPoly {
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut fact = vec![Scalar::one(); n + 1];
    for i in 1..=n {
        fact[i] = &fact[i - 1] * &Scalar::int(i as i64);
    }
    for i in 0..=n {
        let c = &s.pow(i as u32) * &ps[i + 1];
        coeffs.push(RatFunc::from_poly(c.scale(&fact[n - i].checked_inv().unwrap())));
    }
    OmegaPoly::new(coeffs)
}

/// Whether the downward recursion from `P_n = -P` ends at `P_{-1} = 0`.
pub fn verify_case3(r: &RatFunc, n: usize, s: &Poly, theta: &RatFunc, p: &Poly) -> bool {
    let Some(s2r) = (&RatFunc::from_poly(s * s) * r).as_poly() else {
        return false;
    };
    let Some(s_theta) = (&RatFunc::from_poly(s.clone()) * theta).as_poly() else {
        return false;
    };
    recursion(n, s, &s_theta, &s2r, p)[0].is_zero()
}
