use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, RatVector};
use crate::error::{Error, Result};

/// Exact solution of a square system together with its Cramer denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub x: RatVector,
    /// `q = |det M|`; `q · x` is integral by Cramer's rule.
    pub denominator_bound: BigInt,
}

/// Solves `M x = b` for square nonsingular `M`.
pub fn solve_linear(m: &IntMatrix, b: &[BigInt]) -> Result<LinearSolution> {
    let det = m.det()?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: b.len(),
        });
    }
    let rhs: Vec<Vec<BigRational>> = b
        .iter()
        .map(|v| vec![BigRational::from_integer(v.clone())])
        .collect();
    let sol = gauss_jordan(m, rhs).ok_or(Error::Singular)?;
    Ok(LinearSolution {
        x: RatVector(sol.into_iter().map(|mut r| r.remove(0)).collect()),
        denominator_bound: det.abs(),
    })
}

/// Rational inverse of a square nonsingular matrix, as rows.
pub fn inverse_rational(m: &IntMatrix) -> Result<Vec<Vec<BigRational>>> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let rhs = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    gauss_jordan(m, rhs).ok_or(Error::Singular)
}

/// Integer inverse of a unimodular matrix.
pub fn inverse_unimodular(m: &IntMatrix) -> Result<IntMatrix> {
    let inv = inverse_rational(m)?;
    let n = m.rows();
    let mut out = IntMatrix::zeros(n, n);
    for (i, row) in inv.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_integer() {
                return Err(Error::Singular);
            }
            out[(i, j)] = v.to_integer();
        }
    }
    Ok(out)
}

/// Reduces `[M | R]` to `[I | M⁻¹R]`; `None` when `M` is singular.
#[allow(clippy::needless_range_loop)]
fn gauss_jordan(m: &IntMatrix, mut rhs: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = m
        .row_iter()
        .map(|r| {
            r.iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        rhs.swap(c, p);
        let inv = a[c][c].recip();
        for v in a[c].iter_mut() {
            *v *= &inv;
        }
        for v in rhs[c].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..n {
                let d = &f * &a[c][j];
                a[i][j] -= d;
            }
            for j in 0..rhs[i].len() {
                let d = &f * &rhs[c][j];
                rhs[i][j] -= d;
            }
        }
    }
    Some(rhs)
}

/// Solves `M x = b` for a full-column-rank `M` (possibly tall), returning
/// `None` when `b` is outside the column span.
pub fn solve_in_span(m: &IntMatrix, b: &[BigInt]) -> Option<RatVector> {
    let sel_rows = m.independent_rows();
    if sel_rows.len() != m.cols() {
        return None;
    }
    let square = m.select_rows(&sel_rows);
    let sub_b: Vec<BigInt> = sel_rows.iter().map(|&i| b[i].clone()).collect();
    let x = solve_linear(&square, &sub_b).ok()?.x;
    let check = m.mul_rat_vec(&x.0);
    let ok = check
        .iter()
        .zip(b)
        .all(|(l, r)| *l == BigRational::from_integer(r.clone()));
    ok.then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int_vec;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn solve_fixtures() {
        let s = solve_linear(&IntMatrix::identity(2), &int_vec(&[4, -9])).unwrap();
        assert_eq!(s.x, RatVector::from_ints(&int_vec(&[4, -9])));

        let s = solve_linear(&IntMatrix::from_i64(&[&[1, 0], &[2, 3]]), &int_vec(&[7, 5])).unwrap();
        assert_eq!(s.x, RatVector::from_ints(&int_vec(&[7, -3])));
        assert_eq!(s.denominator_bound, BigInt::from(3));

        let s = solve_linear(
            &IntMatrix::from_i64(&[&[1, 1], &[-1, 1]]),
            &int_vec(&[0, 1]),
        )
        .unwrap();
        assert_eq!(s.x, RatVector(vec![rat(-1, 2), rat(1, 2)]));
        assert_eq!(s.denominator_bound, BigInt::from(2));
    }

    #[test]
    fn singular_is_rejected() {
        let m = IntMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(matches!(
            solve_linear(&m, &int_vec(&[1, 2])),
            Err(Error::Singular)
        ));
    }

    #[test]
    fn span_solve() {
        let m = IntMatrix::from_i64(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(
            solve_in_span(&m, &int_vec(&[2, 3, 5])),
            Some(RatVector::from_ints(&int_vec(&[2, 3])))
        );
        assert_eq!(solve_in_span(&m, &int_vec(&[2, 3, 4])), None);
    }
}
