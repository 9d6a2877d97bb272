//! Exact two-phase simplex over the integers.
//!
//! The tableau is kept fraction-free: every entry is an integer numerator
//! over one shared positive denominator, and a pivot on `(r, s)` updates
//! `t[i][j] <- (p·t[i][j] - t[i][s]·t[r][j]) / den` with an exact division
//! (the Bareiss identity). Both objective rows are carried from the start so
//! the identity also holds for them. Entering and leaving variables follow
//! Bland's rule with lowest-index tie breaking, so the method terminates and
//! is deterministic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, RatVector};
use crate::error::{Error, Result};

/// An optimal basic feasible solution of `max {c·x : Ax = b, x >= 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimalVertex {
    /// Structural columns in the final basis, sorted. At most `rank(A)`.
    pub basis: Vec<usize>,
    pub values: RatVector,
    pub objective: BigRational,
}

impl OptimalVertex {
    /// Indices with a non-zero value.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&i| !self.values[i].is_zero())
            .collect()
    }
}

struct Tableau {
    t: Vec<Vec<BigInt>>,
    den: BigInt,
    basis: Vec<usize>,
    m: usize,
    n: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.n + self.m
    }

    fn phase1_row(&self) -> usize {
        self.m
    }

    fn phase2_row(&self) -> usize {
        self.m + 1
    }

    fn pivot(&mut self, r: usize, s: usize) {
        let p = self.t[r][s].clone();
        let width = self.rhs() + 1;
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[s].clone();
            for j in 0..width {
                let v = if f.is_zero() {
                    &p * &row[j]
                } else {
                    &p * &row[j] - &f * &pivot_row[j]
                };
                row[j] = v / &self.den;
            }
        }
        self.den = p;
        if self.den.is_negative() {
            self.den = -&self.den;
            for row in self.t.iter_mut() {
                for v in row.iter_mut() {
                    *v = -&*v;
                }
            }
        }
        self.basis[r] = s;
    }

    /// Bland's rule: first structural column with positive reduced cost.
    fn entering(&self, obj: usize) -> Option<usize> {
        (0..self.n).find(|&j| self.t[obj][j].is_positive())
    }

    /// Minimum-ratio row for column `s`, ties broken by smallest basic index.
    fn leaving(&self, s: usize) -> Option<usize> {
        let rhs = self.rhs();
        let mut best: Option<usize> = None;
        for i in 0..self.m {
            if !self.t[i][s].is_positive() {
                continue;
            }
            best = match best {
                None => Some(i),
                Some(b) => {
                    // t[i][rhs]/t[i][s] vs t[b][rhs]/t[b][s], both denominators positive
                    let lhs = &self.t[i][rhs] * &self.t[b][s];
                    let rhs_v = &self.t[b][rhs] * &self.t[i][s];
                    if lhs < rhs_v || (lhs == rhs_v && self.basis[i] < self.basis[b]) {
                        Some(i)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        best
    }

    fn optimise(&mut self, obj: usize) -> Result<()> {
        while let Some(s) = self.entering(obj) {
            let r = self.leaving(s).ok_or(Error::Unbounded)?;
            self.pivot(r, s);
        }
        Ok(())
    }
}

/// Solves `max {c·x : Ax = b, x >= 0}` exactly.
pub fn maximize(a: &IntMatrix, b: &[BigInt], c: &[BigInt]) -> Result<OptimalVertex> {
    let (m, n) = (a.rows(), a.cols());
    if b.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: b.len(),
        });
    }
    if c.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: c.len(),
        });
    }
    let width = n + m + 1;
    let mut t = vec![vec![BigInt::zero(); width]; m + 2];
    for i in 0..m {
        let flip = b[i].is_negative();
        for j in 0..n {
            t[i][j] = if flip { -&a[(i, j)] } else { a[(i, j)].clone() };
        }
        t[i][n + i] = BigInt::one();
        t[i][n + m] = if flip { -&b[i] } else { b[i].clone() };
    }
    // phase one maximises -(sum of artificials); in the artificial basis its
    // reduced costs are the column sums
    for j in (0..n).chain(std::iter::once(n + m)) {
        let s = (0..m).fold(BigInt::zero(), |acc, i| acc + &t[i][j]);
        t[m][j] = s;
    }
    t[m + 1][..n].clone_from_slice(&c[..n]);
    let mut tab = Tableau {
        t,
        den: BigInt::one(),
        basis: (n..n + m).collect(),
        m,
        n,
    };

    tab.optimise(tab.phase1_row())?;
    if !tab.t[tab.phase1_row()][tab.rhs()].is_zero() {
        return Err(Error::Infeasible);
    }
    // drive remaining (zero-level) artificials out; rows without a structural
    // entry are redundant and stay inert
    for r in 0..m {
        if tab.basis[r] >= n {
            if let Some(j) = (0..n).find(|&j| !tab.t[r][j].is_zero()) {
                tab.pivot(r, j);
            }
        }
    }
    tab.optimise(tab.phase2_row())?;

    let den = BigRational::from_integer(tab.den.clone());
    let mut values = vec![BigRational::zero(); n];
    let mut basis = Vec::new();
    for r in 0..m {
        let j = tab.basis[r];
        if j < n {
            values[j] = BigRational::from_integer(tab.t[r][tab.rhs()].clone()) / &den;
            basis.push(j);
        }
    }
    basis.sort_unstable();
    let objective = -BigRational::from_integer(tab.t[tab.phase2_row()][tab.rhs()].clone()) / &den;
    Ok(OptimalVertex {
        basis,
        values: RatVector(values),
        objective,
    })
}

/// The norm-maximisation program `max {x_1 + ... + x_t : Hx = b, x >= 0}`.
pub fn lp_max_sum(h: &IntMatrix, b: &[BigInt]) -> Result<OptimalVertex> {
    let ones = vec![BigInt::one(); h.cols()];
    maximize(h, b, &ones)
}

/// `max {c·x : Ax <= b}` over free `x`; returns the maximiser.
pub fn maximize_inequality(
    a: &IntMatrix,
    b: &[BigInt],
    c: &[BigInt],
) -> Result<(RatVector, BigRational)> {
    let (m, n) = (a.rows(), a.cols());
    let mut big = IntMatrix::zeros(m, 2 * n + m);
    for i in 0..m {
        for j in 0..n {
            big[(i, j)] = a[(i, j)].clone();
            big[(i, n + j)] = -&a[(i, j)];
        }
        big[(i, 2 * n + i)] = BigInt::one();
    }
    let mut cost = vec![BigInt::zero(); 2 * n + m];
    for j in 0..n {
        cost[j] = c[j].clone();
        cost[n + j] = -&c[j];
    }
    let sol = maximize(&big, b, &cost)?;
    let x = (0..n)
        .map(|j| &sol.values[j] - &sol.values[n + j])
        .collect();
    Ok((RatVector(x), sol.objective))
}
