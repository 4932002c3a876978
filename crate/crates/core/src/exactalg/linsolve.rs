//! Fraction-free (Bareiss) elimination for exact rectangular systems.

use super::field::Field;

/// A consistent system's solution set: `particular + span(nullspace)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution<F> {
    pub particular: Vec<F>,
    pub nullspace: Vec<Vec<F>>,
}

/// Solves `A x = rhs` exactly. Returns `None` when the system is inconsistent.
///
/// Free variables are set to zero in the particular solution; the nullspace
/// basis has one vector per free column, with a 1 in that column.
pub fn linear_solve<F: Field>(a: &[Vec<F>], rhs: &[F]) -> Option<Solution<F>> {
    let rows = a.len();
    assert_eq!(rows, rhs.len(), "row count mismatch");
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            assert_eq!(row.len(), cols, "ragged matrix");
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();

    let mut pivots = Vec::new();
    let mut prev = F::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            let f = m[i][c].clone();
            for j in c..=cols {
                let v = m[r][c].clone() * m[i][j].clone() - f.clone() * m[r][j].clone();
                m[i][j] = v / prev.clone();
            }
        }
        // entries to the left of the pivot in lower rows are now zero; the
        // Bareiss update above keeps them exact but leaves them scaled
        for row in m.iter_mut().skip(r + 1) {
            for v in row.iter_mut().take(c + 1) {
                *v = F::zero();
            }
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }

    if m.iter().skip(r).any(|row| !row[cols].is_zero()) {
        return None;
    }

    let back = |rhs_col: &dyn Fn(usize) -> F, free_val: &dyn Fn(usize) -> F| -> Vec<F> {
        let mut x = vec![F::zero(); cols];
        for c in 0..cols {
            if !pivots.contains(&c) {
                x[c] = free_val(c);
            }
        }
        for (k, &pc) in pivots.iter().enumerate().rev() {
            let mut s = rhs_col(k);
            for j in pc + 1..cols {
                if !m[k][j].is_zero() {
                    s = s - m[k][j].clone() * x[j].clone();
                }
            }
            x[pc] = s / m[k][pc].clone();
        }
        x
    };

    let particular = back(&|k| m[k][cols].clone(), &|_| F::zero());
    let nullspace = (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| back(&|_| F::zero(), &|c| if c == free { F::one() } else { F::zero() }))
        .collect();
    Some(Solution {
        particular,
        nullspace,
    })
}

/// Exact determinant by Bareiss elimination.
pub fn determinant<F: Field>(a: &[Vec<F>]) -> F {
    let n = a.len();
    let mut m = a.to_vec();
    let mut prev = F::one();
    let mut sign = F::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return F::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[k][k].clone() * m[i][j].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = v / prev.clone();
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return F::one();
    }
    sign * m[n - 1][n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::q;
    use num_rational::BigRational;

    fn mat(rows: &[&[(i64, i64)]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&(n, d)| q(n, d)).collect())
            .collect()
    }

    #[test]
    fn identity_system() {
        let a = mat(&[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)]]);
        let s = linear_solve(&a, &[q(1, 1), q(2, 1)]).unwrap();
        assert_eq!(s.particular, vec![q(1, 1), q(2, 1)]);
        assert!(s.nullspace.is_empty());
    }

    #[test]
    fn inconsistent() {
        let a = mat(&[&[(0, 1)]]);
        assert!(linear_solve(&a, &[q(1, 1)]).is_none());
    }

    #[test]
    fn hilbert_three() {
        let h: Vec<Vec<BigRational>> = (0..3)
            .map(|i| (0..3).map(|j| q(1, i + j + 1)).collect())
            .collect();
        let s = linear_solve(&h, &[q(1, 1), q(0, 1), q(0, 1)]).unwrap();
        assert_eq!(s.particular, vec![q(9, 1), q(-36, 1), q(30, 1)]);
        assert_eq!(determinant(&h), q(1, 2160));
    }

    #[test]
    fn underdetermined_has_nullspace() {
        // x + y = 2
        let a = mat(&[&[(1, 1), (1, 1)]]);
        let s = linear_solve(&a, &[q(2, 1)]).unwrap();
        assert_eq!(s.particular, vec![q(2, 1), q(0, 1)]);
        assert_eq!(s.nullspace, vec![vec![q(-1, 1), q(1, 1)]]);
    }
}
