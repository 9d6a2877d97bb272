use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{
    delta_modulus, dot, inverse_rational, is_zero_vec, primitive, IntMatrix, IntVector,
};

/// A pointed rational cone `{x : Ax >= 0}` with `A` of full column rank.
///
/// `Δ(A)` and the primitive extreme rays are computed once on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeH {
    a: IntMatrix,
    delta: BigInt,
    rays: Vec<IntVector>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Position {
    Interior,
    Boundary,
    Outside,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub position: Position,
    /// Rows with `a_i·x = 0`.
    pub tight: Vec<usize>,
    /// The slacks `Ax`.
    pub values: IntVector,
}

impl ConeH {
    pub fn new(a: IntMatrix) -> Result<Self> {
        let delta = delta_modulus(&a).map_err(|_| Error::NonPointed)?;
        let rays = extreme_rays(&a)?;
        Ok(ConeH { a, delta, rays })
    }

    /// The matrix `A`.
    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.a.cols()
    }

    /// `Δ(A)`.
    pub fn delta(&self) -> &BigInt {
        &self.delta
    }

    /// Primitive extreme-ray generators, lexicographically sorted.
    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    /// Dimension of the cone itself (rank of its rays).
    pub fn cone_dim(&self) -> usize {
        if self.rays.is_empty() {
            0
        } else {
            IntMatrix::from_columns(&self.rays, self.dim()).rank()
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.cone_dim() == self.dim()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        x.len() == self.dim() && self.a.row_iter().all(|r| !dot(r, x).is_negative())
    }

    /// The grading `1ᵀAx`; positive on every non-zero point of a pointed cone.
    pub fn degree(&self, x: &[BigInt]) -> BigInt {
        self.a
            .row_iter()
            .fold(BigInt::zero(), |acc, r| acc + dot(r, x))
    }

    pub fn membership(&self, x: &[BigInt]) -> Result<Membership> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        let values = self.a.mul_vec(x);
        let tight: Vec<usize> = (0..values.len()).filter(|&i| values[i].is_zero()).collect();
        let position = if values.iter().any(|v| v.is_negative()) {
            Position::Outside
        } else if tight.is_empty() {
            Position::Interior
        } else {
            Position::Boundary
        };
        Ok(Membership {
            position,
            tight,
            values,
        })
    }
}

type ZeroSet = u128;

fn zero_set(a: &IntMatrix, rows: &[usize], r: &[BigInt]) -> ZeroSet {
    rows.iter()
        .filter(|&&i| dot(a.row(i), r).is_zero())
        .fold(0, |s, &i| s | (1u128 << i))
}

/// Primitive extreme rays of `{x : Ax >= 0}` by incremental double
/// description, lexicographically sorted.
pub fn extreme_rays(a: &IntMatrix) -> Result<Vec<IntVector>> {
    let n = a.cols();
    if a.rank() != n {
        return Err(Error::NonPointed);
    }
    if a.rows() > 128 {
        return Err(Error::GuardExceeded {
            what: "constraint rows for double description",
            count: a.rows(),
            limit: 128,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let init = a.independent_rows();
    let inv = inverse_rational(&a.select_rows(&init))?;
    // column j of B⁻¹ is positive on init[j] and tight on the other init rows
    let mut rays: Vec<IntVector> = (0..n)
        .map(|j| {
            let col: Vec<_> = (0..n).map(|i| inv[i][j].clone()).collect();
            let den = col.iter().fold(BigInt::one(), |l, x| {
                num_integer::Integer::lcm(&l, x.denom())
            });
            let ints: IntVector = col.iter().map(|x| (x * &den).to_integer()).collect();
            primitive(&ints)
        })
        .collect();
    let mut processed = init.clone();
    for i in (0..a.rows()).filter(|i| !init.contains(i)) {
        let row = a.row(i);
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(row, r)).collect();
        let zsets: Vec<ZeroSet> = rays.iter().map(|r| zero_set(a, &processed, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        let mut next: Vec<IntVector> = (0..rays.len())
            .filter(|&k| !vals[k].is_negative())
            .map(|k| rays[k].clone())
            .collect();
        for &p in &pos {
            for &q in &neg {
                let common = zsets[p] & zsets[q];
                if (common.count_ones() as usize) + 2 < n {
                    continue;
                }
                let adjacent =
                    (0..rays.len()).all(|r| r == p || r == q || zsets[r] & common != common);
                if !adjacent {
                    continue;
                }
                let combo: IntVector = rays[q]
                    .iter()
                    .zip(&rays[p])
                    .map(|(xq, xp)| &vals[p] * xq - &vals[q] * xp)
                    .collect();
                if !is_zero_vec(&combo) {
                    next.push(primitive(&combo));
                }
            }
        }
        next.sort();
        next.dedup();
        rays = next;
        processed.push(i);
    }
    rays.sort();
    Ok(rays)
}

/// Cartesian product `C1 × C2` as the block-diagonal system.
pub fn cone_product(c1: &ConeH, c2: &ConeH) -> Result<ConeH> {
    let (m1, n1) = (c1.a.rows(), c1.a.cols());
    let (m2, n2) = (c2.a.rows(), c2.a.cols());
    let mut a = IntMatrix::zeros(m1 + m2, n1 + n2);
    for i in 0..m1 {
        for j in 0..n1 {
            a[(i, j)] = c1.a[(i, j)].clone();
        }
    }
    for i in 0..m2 {
        for j in 0..n2 {
            a[(m1 + i, n1 + j)] = c2.a[(i, j)].clone();
        }
    }
    ConeH::new(a)
}
