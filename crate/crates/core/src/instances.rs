//! Seeded random instances for property suites and experiments.
//!
//! Every generator draws only from the passed RNG, so a seed fixes the output.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{delta_modulus, dot, IntMatrix, IntVector};
use crate::geometry::extreme_rays;

/// The generator used by every seeded suite.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries uniform in `[-bound, bound]`.
pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data: Vec<IntVector> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
                .collect()
        })
        .collect();
    IntMatrix::from_rows(data, cols).expect("consistent widths")
}

/// A product of `steps` random column operations `c_j += ±c_k` and swaps.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    if n < 2 {
        return u;
    }
    for _ in 0..steps {
        let j = rng.gen_range(0..n);
        let k = (j + rng.gen_range(1..n)) % n;
        if rng.gen_bool(0.2) {
            u.swap_cols(j, k);
            continue;
        }
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        for i in 0..n {
            let add = &u[(i, k)] * sign;
            u[(i, j)] += add;
        }
    }
    u
}

/// Full-column-rank `m × n` matrix with `Δ(A) <= 2`: rows of a scaled identity
/// and sparse `±1` rows, mixed by a unimodular transform and shuffled.
pub fn random_bimodular<R: Rng>(rng: &mut R, n: usize, m: usize) -> IntMatrix {
    assert!(m >= n, "need at least n rows");
    loop {
        let mut rows: Vec<IntVector> = (0..n)
            .map(|i| {
                let mut r = vec![BigInt::zero(); n];
                r[i] = BigInt::from(1);
                r
            })
            .collect();
        if rng.gen_bool(0.3) {
            let i = rng.gen_range(0..n);
            rows[i][i] = BigInt::from(2);
        }
        for _ in n..m {
            let r: IntVector = (0..n)
                .map(|_| match rng.gen_range(0..4) {
                    0 => BigInt::from(1),
                    1 => BigInt::from(-1),
                    _ => BigInt::zero(),
                })
                .collect();
            rows.push(r);
        }
        rows.shuffle(rng);
        let a = IntMatrix::from_rows(rows, n).expect("consistent widths");
        if delta_modulus(&a).is_ok_and(|d| d <= BigInt::from(2)) {
            return a.mul(&random_unimodular(rng, n, 2 * n));
        }
    }
}

/// Square matrix with `|det| = delta`: lower-triangular `T` with diagonal
/// product `delta` and `{-1, 0, 1}` below it, times a random unimodular `U`.
pub fn random_simplicial<R: Rng>(rng: &mut R, n: usize, delta: u64) -> IntMatrix {
    assert!(n >= 1 && delta >= 1);
    let mut t = IntMatrix::identity(n);
    let mut rest = delta;
    let mut p = 2;
    while rest > 1 {
        if rest.is_multiple_of(p) {
            let i = rng.gen_range(0..n);
            t[(i, i)] *= p;
            rest /= p;
        } else {
            p += 1;
        }
    }
    for i in 0..n {
        for j in 0..i {
            t[(i, j)] = BigInt::from(rng.gen_range(-1..=1));
        }
    }
    let a = t.mul(&random_unimodular(rng, n, 2 * n));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    a.select_rows(&order)
}

/// Full-column-rank `m × n` matrix with entries in `[-bound, bound]` and
/// `1 <= Δ(A) <= max_delta`.
pub fn random_cone<R: Rng>(
    rng: &mut R,
    n: usize,
    m: usize,
    bound: i64,
    max_delta: u64,
) -> IntMatrix {
    assert!(m >= n);
    loop {
        let a = random_matrix(rng, m, n, bound);
        if a.rank() != n {
            continue;
        }
        if delta_modulus(&a).is_ok_and(|d| d <= BigInt::from(max_delta)) {
            return a;
        }
    }
}

/// One matrix of a mixed suite: simplicial with `|det|` in `1..=delta_max`,
/// or, half the time when `delta_max >= 2`, a non-square one with `Δ <= 2`.
pub fn random_suite_matrix<R: Rng>(rng: &mut R, n: usize, delta_max: u64) -> IntMatrix {
    assert!(delta_max >= 1);
    if delta_max >= 2 && rng.gen_bool(0.5) {
        let m = n + rng.gen_range(1..=2);
        random_bimodular(rng, n, m)
    } else {
        let delta = rng.gen_range(1..=delta_max);
        random_simplicial(rng, n, delta)
    }
}

/// A lattice point of `{x : Ax >= 0}` with coordinates in `[-radius, radius]`.
///
/// Draws non-negative ray combinations plus small noise until one lands in
/// the cone and the box; falls back to uniform box sampling, then to `0`.
pub fn random_cone_point<R: Rng>(rng: &mut R, a: &IntMatrix, radius: i64) -> IntVector {
    let n = a.cols();
    let inside = |z: &IntVector| {
        z.iter().all(|c| c.abs() <= BigInt::from(radius))
            && a.row_iter().all(|r| !dot(r, z).is_negative())
    };
    let rays = extreme_rays(a).unwrap_or_default();
    for _ in 0..200 {
        if rays.is_empty() {
            break;
        }
        let mut z = vec![BigInt::zero(); n];
        for r in &rays {
            let size = r.iter().map(|c| c.abs()).max().unwrap_or_default();
            let cap = BigInt::from(radius) / (size * rays.len());
            let cap = i64::try_from(cap).unwrap_or(0).max(1);
            let c = BigInt::from(rng.gen_range(0..=cap));
            for (zi, ri) in z.iter_mut().zip(r) {
                *zi += &c * ri;
            }
        }
        let noisy: IntVector = z
            .iter()
            .map(|c| c + BigInt::from(rng.gen_range(-2..=2)))
            .collect();
        if inside(&noisy) {
            return noisy;
        }
        if inside(&z) && rng.gen_bool(0.25) {
            return z;
        }
    }
    for _ in 0..2000 {
        let z: IntVector = (0..n)
            .map(|_| BigInt::from(rng.gen_range(-radius..=radius)))
            .collect();
        if inside(&z) {
            return z;
        }
    }
    vec![BigInt::zero(); n]
}
