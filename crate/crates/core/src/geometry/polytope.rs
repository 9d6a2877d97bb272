use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::cone::extreme_rays;
use crate::error::{Error, Result};
use crate::exactlin::{dot, int_vec, maximize_inequality, IntMatrix, IntVector};

/// `P(A, b) = {x : Ax <= b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    a: IntMatrix,
    b: IntVector,
}

impl Polytope {
    pub fn new(a: IntMatrix, b: IntVector) -> Result<Self> {
        if a.rows() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                got: b.len(),
            });
        }
        Ok(Polytope { a, b })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn rhs(&self) -> &[BigInt] {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.cols()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        x.len() == self.dim()
            && self
                .a
                .row_iter()
                .zip(&self.b)
                .all(|(r, bi)| dot(r, x) <= *bi)
    }

    /// Bounded iff the recession cone `{x : Ax <= 0}` is `{0}`.
    pub fn is_bounded(&self) -> bool {
        let n = self.dim();
        if n == 0 {
            return true;
        }
        if self.a.rank() < n {
            return false;
        }
        extreme_rays(&self.a.neg()).is_ok_and(|r| r.is_empty())
    }

    /// Adds the box `[-radius, radius]^n`.
    pub fn intersect_box(&self, radius: &BigInt) -> Polytope {
        let n = self.dim();
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        a = a.vstack(&IntMatrix::identity(n));
        a = a.vstack(&IntMatrix::identity(n).neg());
        b.extend(std::iter::repeat_n(radius.clone(), 2 * n));
        Polytope { a, b }
    }
}

/// `P_1(A) = {x : 0 <= Ax <= 1}` as the `2m`-row system `(A; -A) x <= (1; 0)`.
pub fn unit_parallelepiped(a: &IntMatrix) -> Result<Polytope> {
    let rank = a.rank();
    if rank != a.cols() {
        return Err(Error::RankDeficient {
            rank,
            expected: a.cols(),
        });
    }
    let m = a.rows();
    let mut b = vec![BigInt::one(); m];
    b.extend(std::iter::repeat_n(BigInt::zero(), m));
    Polytope::new(a.vstack(&a.neg()), b)
}

/// Every lattice point of a bounded polytope, in lexicographic order.
///
/// Coordinate bounds come from `2n` exact LPs; a depth-first sweep then fixes
/// coordinates left to right, tightening the interval of the next coordinate
/// against each row with the best case of the still-free coordinates.
pub fn lattice_points(p: &Polytope) -> Result<Vec<IntVector>> {
    if !p.is_bounded() {
        return Err(Error::UnboundedPolytope);
    }
    let n = p.dim();
    if n == 0 {
        return Ok(if p.b.iter().all(|v| !v.is_negative()) {
            vec![Vec::new()]
        } else {
            Vec::new()
        });
    }
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for j in 0..n {
        let mut c = vec![BigInt::zero(); n];
        c[j] = BigInt::one();
        let upper = match maximize_inequality(&p.a, &p.b, &c) {
            Ok((_, v)) => v.floor().to_integer(),
            Err(Error::Infeasible) => return Ok(Vec::new()),
            Err(e) => return Err(e),
        };
        c[j] = -BigInt::one();
        let (_, v) = maximize_inequality(&p.a, &p.b, &c)?;
        let lower = (-v).ceil().to_integer();
        if lower > upper {
            return Ok(Vec::new());
        }
        lo.push(lower);
        hi.push(upper);
    }
    Ok(enumerate_box(p, &lo, &hi))
}

/// Lattice points of `p` inside the box `[lo, hi]`, lexicographic.
pub(crate) fn enumerate_box(p: &Polytope, lo: &[BigInt], hi: &[BigInt]) -> Vec<IntVector> {
    let n = p.dim();
    let m = p.a.rows();
    // suffix[i][j]: smallest possible value of sum_{k >= j} a_ik x_k over the box
    let mut suffix = vec![vec![BigInt::zero(); n + 1]; m];
    for (i, s) in suffix.iter_mut().enumerate() {
        for j in (0..n).rev() {
            let a = &p.a[(i, j)];
            let best = if a.is_negative() {
                a * &hi[j]
            } else {
                a * &lo[j]
            };
            s[j] = &s[j + 1] + best;
        }
    }
    let mut out = Vec::new();
    let mut x: IntVector = lo.to_vec();
    let mut prefix = vec![BigInt::zero(); m];
    sweep(p, lo, hi, &suffix, 0, &mut x, &mut prefix, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    p: &Polytope,
    lo: &[BigInt],
    hi: &[BigInt],
    suffix: &[Vec<BigInt>],
    j: usize,
    x: &mut IntVector,
    prefix: &mut [BigInt],
    out: &mut Vec<IntVector>,
) {
    let n = p.dim();
    if j == n {
        debug_assert!(p.contains(x));
        out.push(x.clone());
        return;
    }
    let mut l = lo[j].clone();
    let mut h = hi[j].clone();
    for i in 0..p.a.rows() {
        let a = &p.a[(i, j)];
        let rem = &p.b[i] - &prefix[i] - &suffix[i][j + 1];
        if a.is_zero() {
            if rem.is_negative() {
                return;
            }
        } else if a.is_positive() {
            h = h.min(rem.div_floor(a));
        } else {
            l = l.max(rem.div_ceil(a));
        }
    }
    let mut v = l;
    while v <= h {
        for (i, pre) in prefix.iter_mut().enumerate() {
            *pre += &p.a[(i, j)] * &v;
        }
        x[j] = v.clone();
        sweep(p, lo, hi, suffix, j + 1, x, prefix, out);
        for (i, pre) in prefix.iter_mut().enumerate() {
            *pre -= &p.a[(i, j)] * &v;
        }
        v += 1;
    }
}

/// All integer points of `[-radius, radius]^n`, lexicographic.
pub fn box_points(n: usize, radius: i64) -> Vec<IntVector> {
    let mut out = Vec::new();
    let mut cur = vec![-radius; n];
    loop {
        out.push(int_vec(&cur));
        let mut j = n;
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if cur[j] < radius {
                cur[j] += 1;
                for c in cur.iter_mut().skip(j + 1) {
                    *c = -radius;
                }
                break;
            }
        }
    }
}
