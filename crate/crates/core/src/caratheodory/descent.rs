use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::decomposition::{Decomposition, Strategy};
use super::sigma::{default_cap, sigma};
use crate::error::{Error, Result};
use crate::exactlin::{delta_modulus, dot, is_zero_vec, primitive, sub_vec, IntMatrix, IntVector};
use crate::geometry::{extreme_rays, face_projection, ConeH};
use crate::hilbert::{hilbert_basis, pigeonhole_point, support_minimal_element};

/// What one descent step did. Vectors are in the original coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DescentAction {
    /// Subtract `multiplier · element`, making another row tight.
    InteriorStep {
        element: IntVector,
        multiplier: BigInt,
    },
    /// Restrict to the face where `rows` of the current system are tight.
    FaceProjection { rows: Vec<usize> },
    /// A non-zero point of `P_1` exists by the pigeonhole argument.
    PigeonholeStep { point: IntVector },
    /// `P_1` of the current system has no non-zero lattice point.
    Stuck,
    /// The remaining point was decomposed by the exact oracle.
    TerminalOracle { terms: Vec<(IntVector, BigInt)> },
}

impl DescentAction {
    pub fn name(&self) -> &'static str {
        match self {
            DescentAction::InteriorStep { .. } => "interior-step",
            DescentAction::FaceProjection { .. } => "face-projection",
            DescentAction::PigeonholeStep { .. } => "pigeonhole-step",
            DescentAction::Stuck => "stuck",
            DescentAction::TerminalOracle { .. } => "terminal-oracle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentStep {
    /// The part of the input point still to be decomposed, before the step.
    pub point: IntVector,
    pub action: DescentAction,
    pub dim_after: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DescentTrace {
    pub steps: Vec<DescentStep>,
}

impl DescentTrace {
    pub fn got_stuck(&self) -> bool {
        self.steps.iter().any(|s| s.action == DescentAction::Stuck)
    }

    /// Re-adds every subtracted term; `Some(point)` when the trace is consistent.
    pub fn replay(&self) -> Option<IntVector> {
        let first = self.steps.first()?;
        let mut total = vec![BigInt::zero(); first.point.len()];
        for s in &self.steps {
            match &s.action {
                DescentAction::InteriorStep {
                    element,
                    multiplier,
                } => {
                    for (t, v) in total.iter_mut().zip(element) {
                        *t += v * multiplier;
                    }
                }
                DescentAction::TerminalOracle { terms } => {
                    for (h, k) in terms {
                        for (t, v) in total.iter_mut().zip(h) {
                            *t += v * k;
                        }
                    }
                }
                _ => {}
            }
        }
        Some(total)
    }
}

/// Rows made primitive, zero rows and duplicates dropped (order kept).
fn normalize_rows(a: &IntMatrix) -> IntMatrix {
    let mut rows: Vec<IntVector> = Vec::new();
    for r in a.row_iter() {
        if is_zero_vec(r) {
            continue;
        }
        let p = primitive(r);
        if !rows.contains(&p) {
            rows.push(p);
        }
    }
    IntMatrix::from_rows(rows, a.cols()).expect("consistent widths")
}

/// Keeps only facet-defining rows of a full-dimensional pointed cone.
fn facet_rows(a: &IntMatrix) -> Result<IntMatrix> {
    let n = a.cols();
    let rays = extreme_rays(a)?;
    let keep: Vec<usize> = (0..a.rows())
        .filter(|&i| {
            let tight: Vec<IntVector> = rays
                .iter()
                .filter(|r| dot(a.row(i), r).is_zero())
                .cloned()
                .collect();
            IntMatrix::from_columns(&tight, n).rank() + 1 == n
        })
        .collect();
    Ok(a.select_rows(&keep))
}

/// Face descent: alternate one Hilbert element per interior step with a
/// unimodular projection onto the face the point lands on.
///
/// When `P_1` of the current system is lattice-free, the remaining point is
/// handed to the exact oracle if the dimension is at most `max(3, Δ - 1)`;
/// otherwise the descent fails with [`Error::Stuck`].
pub fn decompose_face_descent(
    a: &IntMatrix,
    z: &[BigInt],
) -> Result<(Decomposition, DescentTrace)> {
    let n = a.cols();
    let rank = a.rank();
    if rank != n {
        return Err(Error::RankDeficient { rank, expected: n });
    }
    if z.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: z.len(),
        });
    }
    if a.row_iter().any(|r| dot(r, z).is_negative()) {
        return Err(Error::OutsideCone);
    }
    let delta = delta_modulus(a)?;
    let terminal_dim = 3.max(usize::try_from(&delta - 1).unwrap_or(usize::MAX));
    let certified = certified_bound(a, &delta);

    let mut trace = DescentTrace::default();
    let mut terms: Vec<(IntVector, BigInt)> = Vec::new();
    let mut cur_a = normalize_rows(a);
    let mut cur_z = z.to_vec();
    let mut embed = IntMatrix::identity(n);
    let mut remaining = z.to_vec();

    while !is_zero_vec(&cur_z) {
        let d = cur_a.cols();
        let tight: Vec<usize> = (0..cur_a.rows())
            .filter(|&i| dot(cur_a.row(i), &cur_z).is_zero())
            .collect();
        if !tight.is_empty() {
            let fp = face_projection(&cur_a.neg(), &vec![BigInt::zero(); cur_a.rows()], &tight)?;
            cur_z = fp.project(&cur_z)?;
            embed = embed.mul(&fp.embedding());
            cur_a = normalize_rows(&fp.projected_matrix().neg());
            trace.steps.push(DescentStep {
                point: remaining.clone(),
                action: DescentAction::FaceProjection { rows: tight },
                dim_after: fp.dim(),
            });
            continue;
        }

        cur_a = facet_rows(&cur_a)?;
        let found = match support_minimal_element(&cur_a) {
            Ok(found) => Ok(found),
            Err(Error::EmptyParallelepiped) if pigeonhole_applies(&cur_a)? => {
                let h = pigeonhole_point(&cur_a)?;
                trace.steps.push(DescentStep {
                    point: remaining.clone(),
                    action: DescentAction::PigeonholeStep {
                        point: embed.mul_vec(&h),
                    },
                    dim_after: d,
                });
                let ah = cur_a.mul_vec(&h);
                let supp = (0..ah.len()).filter(|&i| !ah[i].is_zero()).collect();
                Ok((h, supp))
            }
            Err(e) => Err(e),
        };
        match found {
            Ok((h, supp)) => {
                let lambda = supp
                    .iter()
                    .map(|&i| dot(cur_a.row(i), &cur_z))
                    .min()
                    .expect("non-empty support");
                let scaled: IntVector = h.iter().map(|v| v * &lambda).collect();
                cur_z = sub_vec(&cur_z, &scaled);
                let element = embed.mul_vec(&h);
                trace.steps.push(DescentStep {
                    point: remaining.clone(),
                    action: DescentAction::InteriorStep {
                        element: element.clone(),
                        multiplier: lambda.clone(),
                    },
                    dim_after: d,
                });
                remaining = sub_vec(&remaining, &embed.mul_vec(&scaled));
                terms.push((element, lambda));
            }
            Err(Error::EmptyParallelepiped) => {
                trace.steps.push(DescentStep {
                    point: remaining.clone(),
                    action: DescentAction::Stuck,
                    dim_after: d,
                });
                if d > terminal_dim {
                    return Err(Error::Stuck {
                        dim: d,
                        trace: Box::new(trace),
                    });
                }
                let hb = hilbert_basis(&ConeH::new(cur_a.clone())?)?;
                let (_, local) = sigma(&cur_z, &hb, default_cap(d))?;
                let lifted: Vec<(IntVector, BigInt)> = local
                    .terms
                    .iter()
                    .map(|(h, k)| (embed.mul_vec(h), k.clone()))
                    .collect();
                trace.steps.push(DescentStep {
                    point: remaining.clone(),
                    action: DescentAction::TerminalOracle {
                        terms: lifted.clone(),
                    },
                    dim_after: 0,
                });
                terms.extend(lifted);
                remaining = vec![BigInt::zero(); n];
                cur_z = vec![BigInt::zero(); d];
            }
            Err(e) => return Err(e),
        }
    }
    let dec = Decomposition::new(z.to_vec(), terms, Strategy::FaceDescent, certified);
    Ok((dec, trace))
}

/// Square `A` with `n >= |det A|`.
fn pigeonhole_applies(a: &IntMatrix) -> Result<bool> {
    Ok(a.is_square() && BigInt::from(a.cols()) >= a.det()?.abs())
}

/// Length bound guaranteed for the descent on `C(A)`, when one applies.
pub fn certified_bound(a: &IntMatrix, delta: &BigInt) -> Option<usize> {
    let n = a.cols();
    let d = usize::try_from(delta).ok()?;
    if d <= 2 {
        return Some(n);
    }
    if a.is_square() {
        return Some(if d <= 4 { n } else { n + d - 3 });
    }
    None
}
