//! Shared fixtures for the criterion benches.

use hilbasis::exactlin::IntMatrix;
use hilbasis::instances::{random_cone, random_simplicial, seeded};

/// The two-dimensional cone `{x : x1 >= 0, 2x1 + 3x2 >= 0}`.
pub fn remark() -> IntMatrix {
    IntMatrix::from_i64(&[&[1, 0], &[2, 3]])
}

/// Seeded simplicial matrices of size `n` with `|det| = delta`.
pub fn simplicial(n: usize, delta: u64, count: usize) -> Vec<IntMatrix> {
    let mut rng = seeded(n as u64 * 1000 + delta);
    (0..count)
        .map(|_| random_simplicial(&mut rng, n, delta))
        .collect()
}

/// Seeded full-column-rank `(n + 1) × n` matrices with small entries.
pub fn cones(n: usize, max_delta: u64, count: usize) -> Vec<IntMatrix> {
    let mut rng = seeded(n as u64 * 7919 + max_delta);
    (0..count)
        .map(|_| random_cone(&mut rng, n, n + 1, 2, max_delta))
        .collect()
}
