use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::laurent::{coefficient_at, sqrt_laurent, LaurentHead};
use crate::exactalg::{PoleData, Point, Scalar, Tower};
use crate::RatFunc;

use super::{check_tower, poles, ratfunc_scalars};

#[derive(Clone, Debug, PartialEq)]
pub struct Case1Local {
    pub head: LaurentHead,
    pub alpha_plus: Scalar,
    pub alpha_minus: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalData {
    pub point: PoleData,
    /// `None` when the point rules out Case 1 (odd order >= 3, or order
    /// 1 / odd negative at infinity).
    pub case1: Option<Case1Local>,
    /// The coefficient `b` of `(x-c)^-2` (resp. `x^-2` at infinity), for
    /// points of order 2 (resp. order >= 2 at infinity).
    pub b: Option<Scalar>,
    /// `sqrt(1 + 4b)` when it is rational.
    pub rational_root: Option<Scalar>,
}

fn half() -> Scalar {
    Scalar::ratio(1, 2)
}

/// `(1 +- sqrt(1 + 4b)) / 2`
fn alpha_from_b(b: &Scalar) -> Result<(Scalar, Scalar)> {
    let s = (Scalar::int(1) + Scalar::int(4) * b).try_sqrt()?;
    Ok(((Scalar::one() + &s) * half(), (Scalar::one() - &s) * half()))
}

pub fn classify_point_case1(r: &RatFunc, p: &PoleData) -> Result<LocalData> {
    let o = p.order;
    let mut b = None;
    let case1 = match &p.point {
        Point::Finite(_) => match o {
            1 => Some(Case1Local {
                head: LaurentHead::zero(p.point.clone()),
                alpha_plus: Scalar::one(),
                alpha_minus: Scalar::one(),
            }),
            2 => {
                let bc = coefficient_at(r, &p.point, -2);
                let (ap, am) = alpha_from_b(&bc)?;
                b = Some(bc);
                Some(Case1Local {
                    head: LaurentHead::zero(p.point.clone()),
                    alpha_plus: ap,
                    alpha_minus: am,
                })
            }
            o if o >= 4 && o % 2 == 0 => {
                let (head, bb) = sqrt_laurent(r, p)?;
                let v = Scalar::int(o / 2);
                let a = head.terms.get(&(-o / 2)).cloned().unwrap();
                let ratio = &bb / &a;
                Some(Case1Local {
                    head,
                    alpha_plus: (&ratio + &v) * half(),
                    alpha_minus: (-&ratio + &v) * half(),
                })
            }
            _ => None,
        },
        Point::Infinity => {
            if o >= 2 {
                let bc = coefficient_at(r, &p.point, 2);
                b = Some(bc);
            }
            if o > 2 {
                Some(Case1Local {
                    head: LaurentHead::zero(Point::Infinity),
                    alpha_plus: Scalar::zero(),
                    alpha_minus: Scalar::one(),
                })
            } else if o == 2 {
                let (ap, am) = alpha_from_b(b.as_ref().unwrap())?;
                Some(Case1Local {
                    head: LaurentHead::zero(Point::Infinity),
                    alpha_plus: ap,
                    alpha_minus: am,
                })
            } else if o <= 0 && o % 2 == 0 {
                let (head, bb) = sqrt_laurent(r, p)?;
                let v = -o / 2;
                let a = head.terms.get(&v).cloned().unwrap();
                let ratio = &bb / &a;
                let v = Scalar::int(v);
                Some(Case1Local {
                    head,
                    alpha_plus: (&ratio - &v) * half(),
                    alpha_minus: (-&ratio - &v) * half(),
                })
            } else {
                None
            }
        }
    };
    let rational_root = b.as_ref().and_then(|b| {
        let d = Scalar::int(1) + Scalar::int(4) * b;
        d.to_rational()
            .and_then(|_| d.sqrt())
            .filter(|s| s.is_rational())
    });
    Ok(LocalData {
        point: p.clone(),
        case1,
        b,
        rational_root,
    })
}

/// Local data at every pole and at infinity. Case 1 data that would need
/// a square root beyond the tower is dropped only if the point is of order
/// 2; any other failure propagates.
pub fn local_data(r: &RatFunc, tower: &Tower) -> Result<Vec<LocalData>> {
    let mut out = Vec::new();
    for p in poles(r, tower)? {
        let d = classify_point_case1(r, &p)?;
        out.push(d);
    }
    let mut all: Vec<&Scalar> = ratfunc_scalars(r).collect();
    for d in &out {
        if let Point::Finite(c) = &d.point.point {
            all.push(c);
        }
        if let Some(c1) = &d.case1 {
            all.extend(c1.head.terms.values());
            all.push(&c1.alpha_plus);
            all.push(&c1.alpha_minus);
        }
    }
    check_tower(tower, all).map_err(|e| match e {
        Error::Unsupported(msg) => Error::Unsupported(format!("Case 1 local data: {msg}")),
        other => other,
    })?;
    Ok(out)
}
