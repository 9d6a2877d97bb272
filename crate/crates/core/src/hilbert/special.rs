use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{inverse_rational, is_zero_vec, IntMatrix, IntVector};
use crate::geometry::{lattice_points, unit_parallelepiped};

/// A non-zero lattice point `h` of `P_1(A)` with `|supp(Ah)|` minimal,
/// together with `supp(Ah)`.
///
/// Ties go to the lexicographically smallest support set, then to the
/// lexicographically smallest `h`.
pub fn support_minimal_element(a: &IntMatrix) -> Result<(IntVector, Vec<usize>)> {
    let p = unit_parallelepiped(a)?;
    let mut best: Option<(usize, Vec<usize>, IntVector)> = None;
    for h in lattice_points(&p)? {
        if is_zero_vec(&h) {
            continue;
        }
        let ah = a.mul_vec(&h);
        let supp: Vec<usize> = (0..ah.len()).filter(|&i| !ah[i].is_zero()).collect();
        let key = (supp.len(), supp, h);
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    best.map(|(_, supp, h)| (h, supp))
        .ok_or(Error::EmptyParallelepiped)
}

/// A non-zero lattice point of `P_1(A)` for square `A` with `n >= |det A|`,
/// from the partial sums `w_1 + ... + w_q` of the columns of `A⁻¹`.
///
/// Returns the first integral partial sum, or `w_{p+1} + ... + w_q` for the
/// first pair `p < q` (lowest `q`, then lowest `p`) in the same coset of
/// `A⁻¹Z^n / Z^n`.
pub fn pigeonhole_point(a: &IntMatrix) -> Result<IntVector> {
    let n = a.rows();
    let det = a.det()?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    if BigInt::from(n) < det.abs() {
        return Err(Error::PigeonholePrecondition {
            n,
            det: det.abs().to_string(),
        });
    }
    let inv = inverse_rational(a)?;
    let mut sums: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut cur = vec![BigRational::zero(); n];
    for q in 0..n {
        for (c, row) in cur.iter_mut().zip(&inv) {
            *c += &row[q];
        }
        if cur.iter().all(|c| c.is_integer()) {
            return Ok(cur.iter().map(|c| c.to_integer()).collect());
        }
        for prev in &sums {
            let diff: Vec<BigRational> = cur.iter().zip(prev).map(|(c, p)| c - p).collect();
            if diff.iter().all(|d| d.is_integer()) {
                return Ok(diff.iter().map(|d| d.to_integer()).collect());
            }
        }
        sums.push(cur.clone());
    }
    unreachable!("n >= |det A| partial sums cannot occupy distinct non-zero cosets")
}
