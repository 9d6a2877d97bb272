use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::semigroup::Representer;
use crate::error::{Error, Result};
use crate::exactlin::{inverse_unimodular, is_zero_vec, smith, sub_vec, IntMatrix, IntVector};
use crate::geometry::{enumerate_box, lattice_points, ConeH, Polytope};

/// Default limit on `t` for computing `delta_h` by full minor enumeration.
pub const DEFAULT_MINOR_CAP: usize = 20;

/// The Hilbert basis `H(C)` of a pointed cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasis {
    cone: ConeH,
    elements: Vec<IntVector>,
    delta_h: Option<BigInt>,
}

impl HilbertBasis {
    /// Wraps a known basis (sorted here) and computes `delta_h` when `t <= cap`.
    pub fn from_elements(cone: ConeH, mut elements: Vec<IntVector>, cap: usize) -> Result<Self> {
        for h in &elements {
            if h.len() != cone.dim() {
                return Err(Error::DimensionMismatch {
                    expected: cone.dim(),
                    got: h.len(),
                });
            }
        }
        elements.sort();
        elements.dedup();
        let delta_h = if elements.len() <= cap {
            Some(max_minor(&IntMatrix::from_columns(&elements, cone.dim())))
        } else {
            None
        };
        Ok(HilbertBasis {
            cone,
            elements,
            delta_h,
        })
    }

    pub fn cone(&self) -> &ConeH {
        &self.cone
    }

    /// Elements in lexicographic order.
    pub fn elements(&self) -> &[IntVector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    pub fn contains(&self, h: &[BigInt]) -> bool {
        self.elements
            .binary_search_by(|e| e.as_slice().cmp(h))
            .is_ok()
    }

    /// The `n x t` matrix with the elements as columns.
    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(&self.elements, self.dim())
    }

    /// Largest absolute `r x r` minor of the element matrix, `r` its rank
    /// (all `n`-column minors for a full-dimensional cone).
    pub fn delta_h(&self) -> Result<&BigInt> {
        self.delta_h.as_ref().ok_or(Error::GuardExceeded {
            what: "basis elements for minor enumeration",
            count: self.elements.len(),
            limit: DEFAULT_MINOR_CAP,
        })
    }
}

/// Largest absolute maximal-rank minor; 1 for a zero-rank matrix.
fn max_minor(h: &IntMatrix) -> BigInt {
    let r = h.rank();
    if r == 0 {
        return BigInt::one();
    }
    let row_sets: Vec<Vec<usize>> = if r == h.rows() {
        vec![(0..h.rows()).collect()]
    } else {
        (0..h.rows()).combinations(r).collect()
    };
    let mut best = BigInt::zero();
    for rows in &row_sets {
        let sub = h.select_rows(rows);
        for cols in (0..h.cols()).combinations(r) {
            let d = sub.select_cols(&cols).det().expect("square").abs();
            if d > best {
                best = d;
            }
        }
    }
    best
}

/// Lattice points of the half-open parallelepiped `{Σ λ_i g_i : 0 <= λ_i < 1}`.
///
/// Coset representatives of `Z^n ∩ lin(G)` modulo `G Z^k` come from the
/// Smith form `U G V = D`: the points `U⁻¹ (c, 0)` with `0 <= c_i < d_i`,
/// each reduced into the parallelepiped. Returned sorted, `0` included.
pub fn fundamental_points(generators: &[IntVector]) -> Result<Vec<IntVector>> {
    let k = generators.len();
    if k == 0 {
        return Ok(vec![Vec::new()]);
    }
    let n = generators[0].len();
    let g = IntMatrix::from_columns(generators, n);
    let rank = g.rank();
    if rank != k {
        return Err(Error::RankDeficient { rank, expected: k });
    }
    let sd = smith(&g);
    let d = sd.diagonal();
    let u_inv = inverse_unimodular(&sd.u)?;
    let mut out = BTreeSet::new();
    let mut c = vec![BigInt::zero(); k];
    loop {
        let mut w = c.clone();
        w.extend(std::iter::repeat_n(BigInt::zero(), n - k));
        let x = u_inv.mul_vec(&w);
        let mu: Vec<BigRational> = (0..k)
            .map(|i| BigRational::new(c[i].clone(), d[i].clone()))
            .collect();
        let lambda: Vec<BigRational> = (0..k)
            .map(|i| {
                (0..k).fold(BigRational::zero(), |acc, j| {
                    acc + BigRational::from_integer(sd.v[(i, j)].clone()) * &mu[j]
                })
            })
            .collect();
        let floors: IntVector = lambda.iter().map(|l| l.floor().to_integer()).collect();
        out.insert(sub_vec(&x, &g.mul_vec(&floors)));

        let mut i = 0;
        loop {
            if i == k {
                return Ok(out.into_iter().collect());
            }
            c[i] += 1;
            if c[i] < d[i] {
                break;
            }
            c[i] = BigInt::zero();
            i += 1;
        }
    }
}

/// Pulling triangulation of the cone spanned by `rays[idx]` (of dimension
/// `dim`): pull the first ray and cone it over the triangulated facets that
/// avoid it. Returns index sets of simplicial cones.
fn triangulate(cone: &ConeH, idx: &[usize], dim: usize) -> Vec<Vec<usize>> {
    if idx.len() == dim {
        return vec![idx.to_vec()];
    }
    let rays = cone.rays();
    let a = cone.matrix();
    let apex = idx[0];
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for row in a.row_iter() {
        let tight: Vec<usize> = idx
            .iter()
            .copied()
            .filter(|&r| crate::exactlin::dot(row, &rays[r]).is_zero())
            .collect();
        if tight.contains(&apex) || tight.len() < dim - 1 {
            continue;
        }
        let cols: Vec<IntVector> = tight.iter().map(|&r| rays[r].clone()).collect();
        if IntMatrix::from_columns(&cols, cone.dim()).rank() != dim - 1 {
            continue;
        }
        if !facets.contains(&tight) {
            facets.push(tight);
        }
    }
    let mut out = Vec::new();
    for f in facets {
        for mut simplex in triangulate(cone, &f, dim - 1) {
            simplex.insert(0, apex);
            out.push(simplex);
        }
    }
    out
}

/// Simplicial cones of a pulling triangulation, as lists of primitive rays.
pub fn triangulation(cone: &ConeH) -> Vec<Vec<IntVector>> {
    let d = cone.cone_dim();
    if d == 0 {
        return Vec::new();
    }
    let idx: Vec<usize> = (0..cone.rays().len()).collect();
    triangulate(cone, &idx, d)
        .into_iter()
        .map(|s| s.into_iter().map(|i| cone.rays()[i].clone()).collect())
        .collect()
}

/// Rays plus every fundamental-parallelepiped point of every simplex.
pub fn candidate_set(cone: &ConeH) -> Result<Vec<IntVector>> {
    let mut set: BTreeSet<IntVector> = cone.rays().iter().cloned().collect();
    for simplex in triangulation(cone) {
        for p in fundamental_points(&simplex)? {
            if !is_zero_vec(&p) {
                set.insert(p);
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// `H(C)`: candidates that dominate no other candidate in slack space.
pub fn hilbert_basis(cone: &ConeH) -> Result<HilbertBasis> {
    hilbert_basis_with_cap(cone, DEFAULT_MINOR_CAP)
}

pub fn hilbert_basis_with_cap(cone: &ConeH, minor_cap: usize) -> Result<HilbertBasis> {
    let candidates = candidate_set(cone)?;
    let a = cone.matrix();
    let mut slacks: Vec<(BigInt, IntVector, usize)> = candidates
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let s = a.mul_vec(c);
            let deg: BigInt = s.iter().sum();
            (deg, s, i)
        })
        .collect();
    slacks.sort();
    let mut keep = Vec::new();
    for (p, (deg, s, i)) in slacks.iter().enumerate() {
        let reducible = slacks[..p]
            .iter()
            .chain(slacks[p + 1..].iter().take_while(|(d, _, _)| d <= deg))
            .any(|(_, s2, _)| s2.iter().zip(s).all(|(x, y)| x <= y));
        if !reducible {
            keep.push(candidates[*i].clone());
        }
    }
    HilbertBasis::from_elements(cone.clone(), keep, minor_cap)
}

/// `h` is irreducible iff `C ∩ (h - C) ∩ Z^n = {0, h}`.
pub fn is_irreducible(h: &[BigInt], cone: &ConeH) -> Result<bool> {
    if h.len() != cone.dim() {
        return Err(Error::DimensionMismatch {
            expected: cone.dim(),
            got: h.len(),
        });
    }
    if !cone.contains(h) {
        return Err(Error::OutsideCone);
    }
    if is_zero_vec(h) {
        return Err(Error::ZeroVector);
    }
    let a = cone.matrix();
    let ah = a.mul_vec(h);
    let p = Polytope::new(
        a.neg().vstack(a),
        std::iter::repeat_n(BigInt::zero(), a.rows())
            .chain(ah)
            .collect(),
    )?;
    Ok(lattice_points(&p)?.len() == 2)
}

/// Outcome of [`verify_hilbert_basis`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BasisReport {
    /// Elements that are zero, outside the cone, or decomposable.
    pub irreducibility_failures: Vec<IntVector>,
    /// Box points of the cone with no representation.
    pub generation_failures: Vec<IntVector>,
    pub points_checked: usize,
}

impl BasisReport {
    pub fn passed(&self) -> bool {
        self.irreducibility_failures.is_empty() && self.generation_failures.is_empty()
    }
}

/// Checks irreducibility of every element and generation of
/// `C ∩ Z^n ∩ [-δ, δ]^n`.
pub fn verify_hilbert_basis(cone: &ConeH, elements: &[IntVector], delta: i64) -> BasisReport {
    let mut report = BasisReport::default();
    for h in elements {
        let ok = h.len() == cone.dim() && matches!(is_irreducible(h, cone), Ok(true));
        if !ok {
            report.irreducibility_failures.push(h.clone());
        }
    }
    let valid: Vec<IntVector> = elements
        .iter()
        .filter(|h| h.len() == cone.dim() && cone.contains(h) && !is_zero_vec(h))
        .cloned()
        .collect();
    let mut rep = Representer::new(cone.matrix(), &valid);
    for x in cone_box_points(cone, delta) {
        report.points_checked += 1;
        if rep.represent(&x).is_none() {
            report.generation_failures.push(x);
        }
    }
    report
}

/// `C ∩ Z^n ∩ [-δ, δ]^n`, lexicographic.
pub fn cone_box_points(cone: &ConeH, delta: i64) -> Vec<IntVector> {
    let n = cone.dim();
    let p = Polytope::new(
        cone.matrix().neg(),
        vec![BigInt::zero(); cone.matrix().rows()],
    )
    .expect("shapes agree");
    let lo = vec![BigInt::from(-delta); n];
    let hi = vec![BigInt::from(delta); n];
    enumerate_box(&p, &lo, &hi)
}

/// `max_j Σ_i |r_ij|` over the rays: every fundamental point lies in this box.
pub fn candidate_box_radius(cone: &ConeH) -> BigInt {
    let n = cone.dim();
    (0..n)
        .map(|j| cone.rays().iter().map(|r| r[j].abs()).sum::<BigInt>())
        .max()
        .unwrap_or_default()
}
