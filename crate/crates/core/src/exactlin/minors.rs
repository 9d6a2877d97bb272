//! Maximal minors: the modulus `Δ(A)` and the gcd of the maximal minors.
//!
//! Both enumerate every `C(m, n)` maximal minor. That is fine for the sizes
//! this crate targets (`m <= 12`, `n <= 6`, at most 924 determinants) and
//! grows combinatorially beyond it.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// `Δ(A)`: the largest absolute `n x n` minor of a full-column-rank `A`.
pub fn delta_modulus(a: &IntMatrix) -> Result<BigInt> {
    let n = a.cols();
    let rank = a.rank();
    if rank != n {
        return Err(Error::RankDeficient { rank, expected: n });
    }
    if n == 0 {
        return Ok(BigInt::from(1));
    }
    let best = (0..a.rows())
        .combinations(n)
        .map(|rows| a.select_rows(&rows).det().expect("square").abs())
        .max()
        .expect("rank n implies at least n rows");
    Ok(best)
}

/// Gcd of the absolute maximal minors. For `m >= n` these are the `n x n`
/// row-subset minors (full column rank required); for `m < n` the `m x m`
/// column-subset minors (full row rank required).
pub fn gcd_max_minors(a: &IntMatrix) -> Result<BigInt> {
    let (m, n) = (a.rows(), a.cols());
    let k = m.min(n);
    let rank = a.rank();
    if rank != k {
        return Err(Error::RankDeficient { rank, expected: k });
    }
    if k == 0 {
        return Ok(BigInt::from(1));
    }
    let g = if m >= n {
        (0..m)
            .combinations(n)
            .map(|rows| a.select_rows(&rows).det().expect("square"))
            .fold(BigInt::zero(), |g, d| g.gcd(&d))
    } else {
        (0..n)
            .combinations(m)
            .map(|cols| a.select_cols(&cols).det().expect("square"))
            .fold(BigInt::zero(), |g, d| g.gcd(&d))
    };
    Ok(g)
}
