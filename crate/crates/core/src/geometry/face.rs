use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::cone::ConeH;
use super::polytope::Polytope;
use crate::error::{Error, Result};
use crate::exactlin::{
    delta_modulus, dot, hermite, maximize_inequality, solve_linear, IntMatrix, IntVector,
};

/// The unimodular projection of a face `F_I = {x ∈ P(A, b) : A_I x = b_I}`
/// onto `P(Ã, b̃)` in dimension `n - k`.
///
/// With `A_I U⁻¹ = (H, 0)` the face maps under `U` into `{x : x_[k] = z̃}`;
/// dropping the first `k` coordinates gives a bijection on lattice points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceProjection {
    /// Independent rows of `I` actually used for the transform, ascending.
    rows: Vec<usize>,
    /// Rows of the original system kept in `Ã`, in order.
    kept: Vec<usize>,
    u: IntMatrix,
    u_inv: IntMatrix,
    h: IntMatrix,
    offset: IntVector,
    a_proj: IntMatrix,
    b_proj: IntVector,
    delta_bound: BigInt,
}

impl FaceProjection {
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Original row index of each row of `Ã`.
    pub fn kept_rows(&self) -> &[usize] {
        &self.kept
    }

    /// Codimension `k`.
    pub fn codim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.u.cols()
    }

    /// Dimension `n - k` of the projected system.
    pub fn dim(&self) -> usize {
        self.ambient_dim() - self.codim()
    }

    pub fn transform(&self) -> &IntMatrix {
        &self.u
    }

    pub fn inverse_transform(&self) -> &IntMatrix {
        &self.u_inv
    }

    pub fn hermite_block(&self) -> &IntMatrix {
        &self.h
    }

    /// The integral solution `z̃` of `H z̃ = b_I`.
    pub fn offset(&self) -> &[BigInt] {
        &self.offset
    }

    pub fn projected_matrix(&self) -> &IntMatrix {
        &self.a_proj
    }

    pub fn projected_rhs(&self) -> &[BigInt] {
        &self.b_proj
    }

    pub fn projected(&self) -> Polytope {
        Polytope::new(self.a_proj.clone(), self.b_proj.clone()).expect("shapes agree")
    }

    /// `⌊Δ(A) / gcd(A_I)⌋`, the modularity bound for `Ã`.
    pub fn modularity_bound(&self) -> &BigInt {
        &self.delta_bound
    }

    /// Linear part of the lift: the last `n - k` columns of `U⁻¹`.
    pub fn embedding(&self) -> IntMatrix {
        let k = self.codim();
        self.u_inv
            .select_cols(&(k..self.ambient_dim()).collect::<Vec<_>>())
    }

    /// The lift of `0`: `U⁻¹ (z̃, 0)`.
    pub fn anchor(&self) -> IntVector {
        let mut full = self.offset.clone();
        full.extend(std::iter::repeat_n(BigInt::zero(), self.dim()));
        self.u_inv.mul_vec(&full)
    }

    /// `π(U x)`, for `x` on the affine hull of the face.
    pub fn project(&self, x: &[BigInt]) -> Result<IntVector> {
        if x.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                got: x.len(),
            });
        }
        let ux = self.u.mul_vec(x);
        let k = self.codim();
        if ux[..k] != self.offset[..] {
            return Err(Error::OutsidePolyhedron);
        }
        Ok(ux[k..].to_vec())
    }

    /// `U⁻¹ (z̃, y)`; requires `y ∈ P(Ã, b̃)`.
    pub fn lift_point(&self, y: &[BigInt]) -> Result<IntVector> {
        if y.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: y.len(),
            });
        }
        let inside = self
            .a_proj
            .row_iter()
            .zip(&self.b_proj)
            .all(|(r, b)| dot(r, y) <= *b);
        if !inside {
            return Err(Error::OutsidePolyhedron);
        }
        let mut full = self.offset.clone();
        full.extend_from_slice(y);
        Ok(self.u_inv.mul_vec(&full))
    }
}

/// Projects the face of `P(A, b)` where the rows in `face_rows` are tight.
///
/// Redundant rows of `I` are reduced to a maximal independent subset first.
/// Rows outside `I` that vanish on the face are dropped from `Ã` (they are
/// implied equalities or trivially satisfied).
pub fn face_projection(a: &IntMatrix, b: &[BigInt], face_rows: &[usize]) -> Result<FaceProjection> {
    let (m, n) = (a.rows(), a.cols());
    if b.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: b.len(),
        });
    }
    let rank = a.rank();
    if rank != n {
        return Err(Error::RankDeficient { rank, expected: n });
    }
    let mut face: Vec<usize> = face_rows.to_vec();
    face.sort_unstable();
    face.dedup();
    if let Some(&bad) = face.iter().find(|&&i| i >= m) {
        return Err(Error::InvalidFace(format!("row {bad} out of range")));
    }
    let sub = a.select_rows(&face);
    let rows: Vec<usize> = sub
        .independent_rows()
        .into_iter()
        .map(|i| face[i])
        .collect();
    let k = rows.len();

    let a_i = a.select_rows(&rows);
    let hd = hermite(&a_i)?;
    let b_i: IntVector = rows.iter().map(|&i| b[i].clone()).collect();
    let offset = if k == 0 {
        Vec::new()
    } else {
        solve_linear(&hd.h, &b_i)?
            .x
            .to_integral()
            .ok_or(Error::LatticeFreeFace)?
    };

    let au = a.mul(&hd.u_inv);
    let tail: Vec<usize> = (k..n).collect();
    let mut kept = Vec::new();
    let mut a_rows = Vec::new();
    let mut b_proj = Vec::new();
    for i in 0..m {
        if rows.contains(&i) {
            continue;
        }
        let star: BigInt = (0..k).map(|j| &au[(i, j)] * &offset[j]).sum();
        let rhs = &b[i] - star;
        let row: IntVector = tail.iter().map(|&j| au[(i, j)].clone()).collect();
        if row.iter().all(|v| v.is_zero()) {
            // constant on the face: it must hold, and if in I it must be tight
            if rhs.is_negative() || (face.contains(&i) && !rhs.is_zero()) {
                return Err(Error::InvalidFace(format!(
                    "row {i} is violated on the face"
                )));
            }
            continue;
        }
        if face.contains(&i) {
            return Err(Error::InvalidFace(format!(
                "row {i} is not implied by the face"
            )));
        }
        kept.push(i);
        a_rows.push(row);
        b_proj.push(rhs);
    }
    let a_proj = IntMatrix::from_rows(a_rows, n - k)?;
    check_full_dimensional(&a_proj, &b_proj)?;

    let delta = delta_modulus(a)?;
    let delta_bound = delta.div_floor(&hd.h.det()?.abs());
    let fp = FaceProjection {
        rows,
        kept,
        u: hd.u,
        u_inv: hd.u_inv,
        h: hd.h,
        offset,
        a_proj,
        b_proj,
        delta_bound,
    };
    debug_assert!(
        fp.a_proj.rows() == 0
            || fp.a_proj.rank() < fp.dim()
            || delta_modulus(&fp.a_proj).is_ok_and(|d| d <= fp.delta_bound)
    );
    Ok(fp)
}

/// `P(Ã, b̃)` must have an interior point: `max {s : Ãy + s·1 <= b̃, s <= 1} > 0`.
fn check_full_dimensional(a: &IntMatrix, b: &[BigInt]) -> Result<()> {
    let (m, d) = (a.rows(), a.cols());
    if m == 0 {
        return Ok(());
    }
    let mut ext = IntMatrix::zeros(m + 1, d + 1);
    for i in 0..m {
        for j in 0..d {
            ext[(i, j)] = a[(i, j)].clone();
        }
        ext[(i, d)] = BigInt::one();
    }
    ext[(m, d)] = BigInt::one();
    let mut rhs = b.to_vec();
    rhs.push(BigInt::one());
    let mut c = vec![BigInt::zero(); d + 1];
    c[d] = BigInt::one();
    match maximize_inequality(&ext, &rhs, &c) {
        Ok((_, v)) if v.is_positive() => Ok(()),
        Ok(_) | Err(Error::Infeasible) => Err(Error::InvalidFace(
            "the face is not of the stated dimension".into(),
        )),
        Err(e) => Err(e),
    }
}

/// Face of the cone `{x : Ax >= 0}` where `face_rows` are tight; the
/// projected system is again a cone, `{y : -Ã y >= 0}` in `Ax <= b` form.
pub fn cone_face_projection(cone: &ConeH, face_rows: &[usize]) -> Result<FaceProjection> {
    let a = cone.matrix().neg();
    face_projection(&a, &vec![BigInt::zero(); a.rows()], face_rows)
}

/// The constraint matrix of the projected cone, in `Ax >= 0` form.
pub fn projected_cone_matrix(fp: &FaceProjection) -> IntMatrix {
    fp.projected_matrix().neg()
}
