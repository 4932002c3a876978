use num_traits::{One, Zero};

use crate::error::Result;
use crate::exactalg::{Point, Scalar, Tower};
use crate::{Poly, RatFunc};

use super::local::LocalData;
use super::{check_tower, local_data, monic_kernel_element, ratfunc_scalars, KovacicResult, Sign, TraceEntry};

/// `P'' + 2 omega P' + (omega' + omega^2 - r) P`
fn operator(r: &RatFunc, omega: &RatFunc, p: &Poly) -> RatFunc {
    let pp = RatFunc::from_poly(p.clone());
    let d1 = RatFunc::from_poly(p.derivative());
    let d2 = RatFunc::from_poly(p.derivative().derivative());
    let coef = &(&omega.derivative() + &(omega * omega)) - r;
    &(&d2 + &(&(omega * &d1) * &RatFunc::constant(Scalar::int(2)))) + &(&coef * &pp)
}

pub fn verify_case1(r: &RatFunc, omega: &RatFunc, p: &Poly) -> bool {
    operator(r, omega, p).is_zero()
}

/// First Case 1 solution in the fixed candidate order.
pub fn case1(r: &RatFunc) -> Result<Option<KovacicResult>> {
    let tower = Tower::default();
    let locals = local_data(r, &tower)?;
    Ok(case1_with(r, &locals, &tower, &mut Vec::new(), false)?.into_iter().next())
}

/// Every Case 1 solution, one per distinct Riccati solution `omega + P'/P`.
pub fn case1_all(r: &RatFunc, tower: &Tower) -> Result<Vec<KovacicResult>> {
    let locals = local_data(r, tower)?;
    case1_with(r, &locals, tower, &mut Vec::new(), true)
}

pub(crate) fn case1_with(
    r: &RatFunc,
    locals: &[LocalData],
    tower: &Tower,
    trace: &mut Vec<TraceEntry>,
    all: bool,
) -> Result<Vec<KovacicResult>> {
    let Some(data): Option<Vec<_>> = locals.iter().map(|d| d.case1.as_ref()).collect() else {
        return Ok(Vec::new());
    };
    let k = data.len();
    // sign vectors in lexicographic order, '+' before '-'
    let mut cands: Vec<(usize, Vec<Sign>)> = Vec::new();
    for mask in 0..(1u64 << k) {
        let signs: Vec<Sign> = (0..k)
            .map(|i| {
                if mask >> (k - 1 - i) & 1 == 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            })
            .collect();
        let alpha = |i: usize| match signs[i] {
            Sign::Plus => &data[i].alpha_plus,
            Sign::Minus => &data[i].alpha_minus,
        };
        // infinity is last
        let mut m = alpha(k - 1).clone();
        for i in 0..k - 1 {
            m -= alpha(i);
        }
        if let Some(mi) = m.to_i64() {
            if mi >= 0 {
                cands.push((mi as usize, signs));
            }
        }
    }
    cands.sort_by_key(|(m, _)| *m);

    let mut out = Vec::new();
    let mut seen: Vec<RatFunc> = Vec::new();
    let mut tried: Vec<(usize, RatFunc)> = Vec::new();
    for (m, signs) in cands {
        let mut omega = RatFunc::zero();
        for (i, d) in data.iter().enumerate() {
            let head = d.head.to_ratfunc();
            let (sgn_head, alpha) = match signs[i] {
                Sign::Plus => (head, &d.alpha_plus),
                Sign::Minus => (-head, &d.alpha_minus),
            };
            omega = &omega + &sgn_head;
            if let Point::Finite(c) = &d.head.center {
                omega = &omega + &RatFunc::inv_linear_pow(c, 1).scale(alpha);
            }
        }
        let choice = locals
            .iter()
            .zip(&signs)
            .map(|(l, s)| format!("{}:{s}", l.point.point))
            .collect::<Vec<_>>()
            .join(",");
        if tried.iter().any(|(tm, tw)| *tm == m && *tw == omega) {
            continue;
        }
        tried.push((m, omega.clone()));
        let images: Vec<RatFunc> = (0..=m)
            .map(|j| operator(r, &omega, &Poly::monomial(Scalar::one(), j)))
            .collect();
        let found = monic_kernel_element(&images);
        trace.push(TraceEntry {
            case: 1,
            n: None,
            m,
            choice,
            found: found.is_some(),
        });
        if let Some(p) = found {
            if !verify_case1(r, &omega, &p) {
                continue;
            }
            check_tower(tower, ratfunc_scalars(&omega).chain(p.coeffs()))?;
            let w = &omega + &super::log_derivative(&p);
            if seen.contains(&w) {
                continue;
            }
            seen.push(w);
            out.push(KovacicResult::Case1 {
                m,
                signs: locals
                    .iter()
                    .map(|l| l.point.point.clone())
                    .zip(signs.iter().copied())
                    .collect(),
                omega,
                p,
            });
            if !all {
                break;
            }
        }
    }
    Ok(out)
}
