use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::decomposition::{Decomposition, Strategy};
use super::sigma::{default_cap, sigma};
use crate::error::{Error, Result};
use crate::exactlin::{is_zero_vec, lp_max_sum, maximize, IntMatrix, IntVector, OptimalVertex};
use crate::hilbert::{HilbertBasis, Representer};

/// Default limit on the number of strips `P + C_τ` tested per point.
pub const DEFAULT_STRIP_GUARD: usize = 10_000;

/// Whether the LP-rounding bound is certified for a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EligibilityReport {
    pub point: IntVector,
    /// Exact membership in `D`; `None` when the strip count exceeds the guard.
    pub in_d: Option<bool>,
    /// The LP vertex has full support with every multiplier `>= delta_h`.
    pub vertex_multipliers_ok: bool,
    pub delta_h: BigInt,
    pub vertex: OptimalVertex,
}

/// `D`-membership of `b`: outside every strip
/// `{Σ λ_i h_i : λ >= 0, λ_i < Δ for i ∉ τ}` with `|τ| = r - 1`.
pub fn d_membership(b: &[BigInt], hb: &HilbertBasis) -> Result<EligibilityReport> {
    d_membership_with_guard(b, hb, DEFAULT_STRIP_GUARD)
}

pub fn d_membership_with_guard(
    b: &[BigInt],
    hb: &HilbertBasis,
    guard: usize,
) -> Result<EligibilityReport> {
    let mut report = eligibility(b, hb)?;
    let h = hb.matrix();
    let r = h.rank();
    let t = hb.len();
    let count = binomial(t, r.saturating_sub(1));
    if count > guard {
        return Err(Error::GuardExceeded {
            what: "strips for D-membership",
            count,
            limit: guard,
        });
    }
    let in_d = if is_zero_vec(b) {
        false
    } else {
        let mut inside_some = false;
        for tau in (0..t).combinations(r.saturating_sub(1)) {
            if in_strip(&h, b, &tau, &report.delta_h)? {
                inside_some = true;
                break;
            }
        }
        !inside_some
    };
    debug_assert!(!in_d || report.vertex_multipliers_ok);
    report.in_d = Some(in_d);
    Ok(report)
}

/// Cone check, LP vertex and the multiplier condition, without strips.
fn eligibility(b: &[BigInt], hb: &HilbertBasis) -> Result<EligibilityReport> {
    let cone = hb.cone();
    if b.len() != cone.dim() {
        return Err(Error::DimensionMismatch {
            expected: cone.dim(),
            got: b.len(),
        });
    }
    if !cone.contains(b) {
        return Err(Error::OutsideCone);
    }
    let delta_h = hb.delta_h()?.clone();
    let h = hb.matrix();
    let vertex = lp_max_sum(&h, b)?;
    let support = vertex.support();
    let threshold = BigRational::from_integer(delta_h.clone());
    let vertex_multipliers_ok =
        support.len() == h.rank() && support.iter().all(|&i| vertex.values[i] >= threshold);
    Ok(EligibilityReport {
        point: b.to_vec(),
        in_d: None,
        vertex_multipliers_ok,
        delta_h,
        vertex,
    })
}

/// Whether some `λ >= 0` with `Hλ = b` has `λ_i < Δ` off `τ`:
/// `max {s : Hλ = b, λ_i + s <= Δ (i ∉ τ), s <= 1, λ, s >= 0} > 0`.
fn in_strip(h: &IntMatrix, b: &[BigInt], tau: &[usize], delta: &BigInt) -> Result<bool> {
    let (n, t) = (h.rows(), h.cols());
    let off: Vec<usize> = (0..t).filter(|i| !tau.contains(i)).collect();
    let s = t;
    let slack0 = t + 1;
    let width = t + 1 + off.len() + 1;
    let rows = n + off.len() + 1;
    let mut a = IntMatrix::zeros(rows, width);
    let mut rhs = Vec::with_capacity(rows);
    for i in 0..n {
        for j in 0..t {
            a[(i, j)] = h[(i, j)].clone();
        }
        rhs.push(b[i].clone());
    }
    for (k, &i) in off.iter().enumerate() {
        a[(n + k, i)] = BigInt::one();
        a[(n + k, s)] = BigInt::one();
        a[(n + k, slack0 + k)] = BigInt::one();
        rhs.push(delta.clone());
    }
    a[(rows - 1, s)] = BigInt::one();
    a[(rows - 1, width - 1)] = BigInt::one();
    rhs.push(BigInt::one());
    let mut c = vec![BigInt::zero(); width];
    c[s] = BigInt::one();
    match maximize(&a, &rhs, &c) {
        Ok(v) => Ok(v.objective.is_positive()),
        Err(Error::Infeasible) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Lexicographically smallest `β >= 0` with `Hβ = r`.
pub fn integral_point_of_q(hb: &HilbertBasis, r: &[BigInt]) -> Result<Vec<BigInt>> {
    let cone = hb.cone();
    if r.len() != cone.dim() {
        return Err(Error::DimensionMismatch {
            expected: cone.dim(),
            got: r.len(),
        });
    }
    if !cone.contains(r) {
        return Err(Error::OutsideCone);
    }
    let beta = Representer::new(cone.matrix(), hb.elements())
        .represent(r)
        .ok_or(Error::NotRepresentable)?;
    if !is_zero_vec(r) {
        let optimum = lp_max_sum(&hb.matrix(), r)?.objective;
        let total: BigInt = beta.iter().sum();
        assert!(
            BigRational::from_integer(total) <= optimum,
            "integral point beats the LP optimum"
        );
    }
    Ok(beta)
}

/// LP-vertex rounding.
///
/// With `λ` an optimal vertex of `max {1ᵀx : Hx = b, x >= 0}` on basis `B`
/// and `μ` its fractional parts: if `Σμ <= r/2`, `b = Σ⌊λ_i⌋h_i + Hβ` with
/// `Hβ = H_B μ`. Otherwise, with `γ = ⌈λ⌉ - λ`, `s = H_B γ`, `q` the basis
/// determinant and `η = λ - (q-1)γ`, `b = Σ η_i h_i + (q-1)Hδ` with `Hδ = s`.
/// Negative `η` falls back to the oracle witness.
pub fn decompose_lp_rounding(
    b: &[BigInt],
    hb: &HilbertBasis,
) -> Result<(Decomposition, EligibilityReport)> {
    let mut report = eligibility(b, hb)?;
    match d_membership(b, hb) {
        Ok(full) => report = full,
        Err(Error::GuardExceeded { .. }) => {}
        Err(e) => return Err(e),
    }
    let n = hb.dim();
    let bound = (3 * n) / 2;
    let certified = report.vertex_multipliers_ok.then_some(bound);
    if is_zero_vec(b) {
        return Ok((
            Decomposition::new(b.to_vec(), [], Strategy::LpRounding, None),
            report,
        ));
    }
    let h = hb.matrix();
    let r = h.rank();
    let elements = hb.elements();
    let basis = report.vertex.basis.clone();
    let lambda: Vec<BigRational> = basis
        .iter()
        .map(|&i| report.vertex.values[i].clone())
        .collect();
    let mu: Vec<BigRational> = lambda.iter().map(|l| l - l.floor()).collect();
    let mu_sum: BigRational = mu.iter().sum();
    let h_b = h.select_cols(&basis);
    let combine = |coef: &[BigRational]| -> IntVector {
        h_b.mul_rat_vec(coef)
            .into_iter()
            .map(|v| {
                assert!(v.is_integer(), "basis combination is not integral");
                v.to_integer()
            })
            .collect()
    };

    let mut terms: Vec<(IntVector, BigInt)> = Vec::new();
    if mu_sum * BigRational::from_integer(2.into()) <= BigRational::from_integer(r.into()) {
        for (&i, l) in basis.iter().zip(&lambda) {
            terms.push((elements[i].clone(), l.floor().to_integer()));
        }
        let rest = combine(&mu);
        let beta = integral_point_of_q(hb, &rest)?;
        terms.extend(elements.iter().cloned().zip(beta));
    } else {
        let gamma: Vec<BigRational> = lambda.iter().map(|l| l.ceil() - l).collect();
        let s = combine(&gamma);
        let q = basis_determinant(&h_b);
        let q_minus_one = BigRational::from_integer(&q - 1);
        let eta: Vec<BigRational> = lambda
            .iter()
            .zip(&gamma)
            .map(|(l, g)| l - &q_minus_one * g)
            .collect();
        if eta.iter().any(|e| e.is_negative()) {
            let (_, witness) = sigma(b, hb, default_cap(n))?;
            let d = Decomposition::new(b.to_vec(), witness.terms, Strategy::LpFallback, None);
            return Ok((d, report));
        }
        for (&i, e) in basis.iter().zip(&eta) {
            assert!(e.is_integer(), "η is not integral");
            terms.push((elements[i].clone(), e.to_integer()));
        }
        let delta = integral_point_of_q(hb, &s)?;
        let scale = &q - 1;
        terms.extend(
            elements
                .iter()
                .cloned()
                .zip(delta.into_iter().map(|d| d * &scale)),
        );
    }
    let d = Decomposition::new(b.to_vec(), terms, Strategy::LpRounding, certified);
    Ok((d, report))
}

/// `|det|` of a nonsingular square row selection of the basis columns.
fn basis_determinant(h_b: &IntMatrix) -> BigInt {
    if h_b.cols() == 0 {
        return BigInt::one();
    }
    h_b.select_rows(&h_b.independent_rows())
        .det()
        .expect("square")
        .abs()
}
