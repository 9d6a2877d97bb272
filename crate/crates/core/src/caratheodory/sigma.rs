use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::decomposition::{Decomposition, Strategy};
use super::sweep::par_map_with;
use crate::error::{Error, Result};
use crate::exactlin::{inverse_rational, is_zero_vec, IntMatrix, IntVector};
use crate::hilbert::{cone_box_points, HilbertBasis};

/// Sebő's bound `2n - 2` (at least 1): no point of a pointed `n`-dimensional
/// cone needs more Hilbert basis elements.
pub fn default_cap(n: usize) -> usize {
    (2 * n).saturating_sub(2).max(1)
}

/// Square solve data for an independent column set.
#[derive(Clone, Debug)]
struct Basic {
    rows: Vec<usize>,
    adj: IntMatrix,
    det: BigInt,
}

/// Minimum-support search over a fixed Hilbert basis, with per-subset
/// solve data cached across queries.
#[derive(Clone, Debug)]
pub struct SigmaSolver<'a> {
    hb: &'a HilbertBasis,
    h: IntMatrix,
    degrees: Vec<BigInt>,
    cache: HashMap<Vec<usize>, Option<Basic>>,
}

impl<'a> SigmaSolver<'a> {
    pub fn new(hb: &'a HilbertBasis) -> Self {
        let degrees = hb.elements().iter().map(|h| hb.cone().degree(h)).collect();
        SigmaSolver {
            hb,
            h: hb.matrix(),
            degrees,
            cache: HashMap::new(),
        }
    }

    /// `σ(z)` with a witness, searching supports of size at most `cap`.
    pub fn sigma(&mut self, z: &[BigInt], cap: usize) -> Result<(usize, Decomposition)> {
        let cone = self.hb.cone();
        if z.len() != cone.dim() {
            return Err(Error::DimensionMismatch {
                expected: cone.dim(),
                got: z.len(),
            });
        }
        if !cone.contains(z) {
            return Err(Error::OutsideCone);
        }
        if is_zero_vec(z) {
            return Ok((
                0,
                Decomposition::new(z.to_vec(), [], Strategy::Oracle, None),
            ));
        }
        let t = self.hb.len();
        for size in 1..=cap.min(t) {
            for subset in (0..t).combinations(size) {
                if let Some(lambda) = self.positive_solution(&subset, z) {
                    let elements = self.hb.elements();
                    let terms = subset.iter().map(|&i| elements[i].clone()).zip(lambda);
                    return Ok((
                        size,
                        Decomposition::new(z.to_vec(), terms, Strategy::Oracle, None),
                    ));
                }
            }
        }
        Err(Error::CapExceeded { cap })
    }

    /// Whether `σ(z) <= k`.
    pub fn at_most(&mut self, z: &[BigInt], k: usize) -> Result<bool> {
        match self.sigma(z, k) {
            Ok(_) => Ok(true),
            Err(Error::CapExceeded { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }

    fn basic(&mut self, cols: &[usize]) -> Option<Basic> {
        if let Some(b) = self.cache.get(cols) {
            return b.clone();
        }
        let sub = self.h.select_cols(cols);
        let independent = sub.rank() == cols.len();
        let rows = if independent {
            sub.independent_rows()
        } else {
            Vec::new()
        };
        let basic = independent.then(|| {
            let square = sub.select_rows(&rows);
            let det = square.det().expect("square");
            let inv = inverse_rational(&square).expect("nonsingular");
            let k = cols.len();
            let mut adj = IntMatrix::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    adj[(i, j)] =
                        (&inv[i][j] * BigRational::from_integer(det.clone())).to_integer();
                }
            }
            Basic { rows, adj, det }
        });
        self.cache.insert(cols.to_vec(), basic.clone());
        basic
    }

    /// The unique solution of `H_S λ = w` for independent `S`, if integral.
    fn solve_basic(&self, basic: &Basic, cols: &[usize], w: &[BigInt]) -> Option<Vec<BigInt>> {
        let rhs: IntVector = basic.rows.iter().map(|&i| w[i].clone()).collect();
        let num = basic.adj.mul_vec(&rhs);
        let mut lambda = Vec::with_capacity(num.len());
        for v in num {
            let (q, r) = v.div_rem(&basic.det);
            if !r.is_zero() {
                return None;
            }
            lambda.push(q);
        }
        let check = self.h.select_cols(cols).mul_vec(&lambda);
        (check == w).then_some(lambda)
    }

    /// An integral `λ >= 1` with `H_S λ = z`, first in enumeration order.
    fn positive_solution(&mut self, subset: &[usize], z: &[BigInt]) -> Option<Vec<BigInt>> {
        if let Some(basic) = self.basic(subset) {
            let lambda = self.solve_basic(&basic, subset, z)?;
            return lambda.iter().all(|l| l.is_positive()).then_some(lambda);
        }
        // dependent support: shift by one copy of each element, fix the
        // multiplicities of the non-basic columns, solve for the rest
        let mut shifted = z.to_vec();
        for &i in subset {
            for (s, v) in shifted.iter_mut().zip(self.hb.elements()[i].iter()) {
                *s -= v;
            }
        }
        if !self.hb.cone().contains(&shifted) {
            return None;
        }
        let sub = self.h.select_cols(subset);
        let basic_pos = sub.transpose().independent_rows();
        let free_pos: Vec<usize> = (0..subset.len())
            .filter(|p| !basic_pos.contains(p))
            .collect();
        let basic_cols: Vec<usize> = basic_pos.iter().map(|&p| subset[p]).collect();
        let free_cols: Vec<usize> = free_pos.iter().map(|&p| subset[p]).collect();
        let basic = self.basic(&basic_cols)?;
        let budget = self.hb.cone().degree(&shifted);
        let mut mult = vec![BigInt::zero(); free_cols.len()];
        let found = self.enumerate_free(
            &basic,
            &basic_cols,
            &free_cols,
            0,
            shifted,
            budget,
            &mut mult,
        )?;
        let mut lambda = vec![BigInt::one(); subset.len()];
        for (p, v) in basic_pos.iter().zip(found) {
            lambda[*p] += v;
        }
        for (p, v) in free_pos.iter().zip(mult) {
            lambda[*p] += v;
        }
        Some(lambda)
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate_free(
        &self,
        basic: &Basic,
        basic_cols: &[usize],
        free_cols: &[usize],
        j: usize,
        rem: IntVector,
        budget: BigInt,
        mult: &mut [BigInt],
    ) -> Option<Vec<BigInt>> {
        if j == free_cols.len() {
            let sol = self.solve_basic(basic, basic_cols, &rem)?;
            return sol.iter().all(|v| !v.is_negative()).then_some(sol);
        }
        let h = &self.hb.elements()[free_cols[j]];
        let deg = &self.degrees[free_cols[j]];
        let mut k = BigInt::zero();
        let mut cur = rem;
        let mut left = budget;
        while !left.is_negative() {
            mult[j] = k.clone();
            if let Some(sol) = self.enumerate_free(
                basic,
                basic_cols,
                free_cols,
                j + 1,
                cur.clone(),
                left.clone(),
                mult,
            ) {
                return Some(sol);
            }
            for (c, v) in cur.iter_mut().zip(h) {
                *c -= v;
            }
            left -= deg;
            k += 1;
        }
        mult[j] = BigInt::zero();
        None
    }
}

/// `σ(z)`: the fewest distinct basis elements summing to `z`, with a witness.
pub fn sigma(z: &[BigInt], hb: &HilbertBasis, cap: usize) -> Result<(usize, Decomposition)> {
    SigmaSolver::new(hb).sigma(z, cap)
}

/// Largest `σ` over `C ∩ Z^n ∩ [-δ, δ]^n`: a lower bound on `CR(C)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrBox {
    pub value: usize,
    /// First maximiser in lexicographic order.
    pub argmax: IntVector,
    pub points: usize,
}

pub fn cr_box(hb: &HilbertBasis, delta: i64, threads: usize) -> Result<CrBox> {
    let points = cone_box_points(hb.cone(), delta);
    let cap = default_cap(hb.dim());
    let sigmas = par_map_with(
        &points,
        threads,
        || SigmaSolver::new(hb),
        |s, z| s.sigma(z, cap).map(|(v, _)| v),
    );
    let mut best = CrBox {
        value: 0,
        argmax: vec![BigInt::zero(); hb.dim()],
        points: points.len(),
    };
    for (z, s) in points.iter().zip(sigmas) {
        let s = s?;
        if s > best.value {
            best.value = s;
            best.argmax = z.clone();
        }
    }
    Ok(best)
}

/// One row of a density table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityRow {
    pub delta: i64,
    pub hits: usize,
    pub total: usize,
    pub fraction: BigRational,
}

/// Fraction of `C ∩ Z^n ∩ [-δ, δ]^n` with `σ <= k`, exactly, per `δ`.
pub fn density(
    hb: &HilbertBasis,
    k: usize,
    deltas: &[i64],
    threads: usize,
) -> Result<Vec<DensityRow>> {
    let Some(&largest) = deltas.iter().max() else {
        return Ok(Vec::new());
    };
    let points = cone_box_points(hb.cone(), largest);
    let ok = par_map_with(
        &points,
        threads,
        || SigmaSolver::new(hb),
        |s, z| s.at_most(z, k),
    );
    let flags: Vec<bool> = ok.into_iter().collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(deltas.len());
    for &d in deltas {
        let bound = BigInt::from(d);
        let inside = |z: &IntVector| z.iter().all(|c| c.abs() <= bound);
        let mut hits = 0;
        let mut total = 0;
        for (z, f) in points.iter().zip(&flags) {
            if inside(z) {
                total += 1;
                hits += usize::from(*f);
            }
        }
        if total == 0 {
            return Err(Error::EmptyBox { delta: d });
        }
        rows.push(DensityRow {
            delta: d,
            hits,
            total,
            fraction: BigRational::new(hits.into(), total.into()),
        });
    }
    Ok(rows)
}
