//! Hermite and Smith normal forms with their unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::solve::inverse_unimodular;
use super::IntMatrix;
use crate::error::{Error, Result};

/// Column-style Hermite decomposition of a full-row-rank `k x n` matrix:
/// `A · U⁻¹ = (H, 0)` with `H` lower triangular, positive diagonal, and
/// every entry left of a pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct HermiteDecomposition {
    /// The invertible `k x k` block.
    pub h: IntMatrix,
    /// Unimodular `n x n` transform.
    pub u: IntMatrix,
    /// `U⁻¹`; its last `n - k` columns are a lattice basis of `ker A`,
    /// each oriented with its first non-zero entry positive.
    pub u_inv: IntMatrix,
}

/// Smith decomposition `U · A · V = D` with `d_1 | d_2 | ...` and `d_i >= 0`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// The diagonal `d_1, ..., d_min(m,n)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}

/// Returns `(g, x, y)` with `x·a + y·b = g = gcd(a, b) >= 0`.
pub(crate) fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, k: &BigInt) {
    for i in 0..m.rows() {
        let v = &m[(i, src)] * k;
        m[(i, dst)] += v;
    }
}

fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, k: &BigInt) {
    for j in 0..m.cols() {
        let v = &m[(src, j)] * k;
        m[(dst, j)] += v;
    }
}

fn negate_col(m: &mut IntMatrix, j: usize) {
    for i in 0..m.rows() {
        m[(i, j)] = -&m[(i, j)];
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for j in 0..m.cols() {
        m[(i, j)] = -&m[(i, j)];
    }
}

/// Replaces columns `(p, c)` by `(x·p + y·c, -(b/g)·p + (a/g)·c)`; a
/// determinant-one transform that leaves `gcd(a, b)` in column `p`, row `i`.
fn gcd_combine_cols(mats: &mut [&mut IntMatrix], i: usize, p: usize, c: usize) {
    let a = mats[0][(i, p)].clone();
    let b = mats[0][(i, c)].clone();
    let (g, x, y) = ext_gcd(&a, &b);
    let (ag, bg) = (&a / &g, &b / &g);
    for m in mats.iter_mut() {
        for r in 0..m.rows() {
            let vp = m[(r, p)].clone();
            let vc = m[(r, c)].clone();
            m[(r, p)] = &x * &vp + &y * &vc;
            m[(r, c)] = &ag * &vc - &bg * &vp;
        }
    }
}

/// Hermite decomposition of a full-row-rank matrix.
pub fn hermite(a: &IntMatrix) -> Result<HermiteDecomposition> {
    let (k, n) = (a.rows(), a.cols());
    let rank = a.rank();
    if rank != k {
        return Err(Error::RankDeficient { rank, expected: k });
    }
    let mut m = a.clone();
    let mut v = IntMatrix::identity(n);
    for i in 0..k {
        for c in i + 1..n {
            if !m[(i, c)].is_zero() {
                gcd_combine_cols(&mut [&mut m, &mut v], i, i, c);
            }
        }
        // Full row rank puts every pivot on the diagonal.
        debug_assert!(!m[(i, i)].is_zero());
        if m[(i, i)].is_negative() {
            negate_col(&mut m, i);
            negate_col(&mut v, i);
        }
        let pivot = m[(i, i)].clone();
        for j in 0..i {
            let q = m[(i, j)].div_floor(&pivot);
            if !q.is_zero() {
                let nq = -q;
                col_axpy(&mut m, j, i, &nq);
                col_axpy(&mut v, j, i, &nq);
            }
        }
    }
    for c in k..n {
        let first = (0..n).map(|r| &v[(r, c)]).find(|x| !x.is_zero());
        if first.is_some_and(|x| x.is_negative()) {
            negate_col(&mut v, c);
        }
    }
    let h = m.select_cols(&(0..k).collect::<Vec<_>>());
    let u = inverse_unimodular(&v)?;
    debug_assert_eq!(a.mul(&v).select_cols(&(0..k).collect::<Vec<_>>()), h);
    Ok(HermiteDecomposition { h, u, u_inv: v })
}

/// Smith normal form of an arbitrary integer matrix.
pub fn smith(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &d[(i, j)];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithDecomposition { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)])));
            match offender {
                Some(i) => {
                    row_axpy(&mut d, t, i, &BigInt::one());
                    row_axpy(&mut u, t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    SmithDecomposition { u, d, v }
}
