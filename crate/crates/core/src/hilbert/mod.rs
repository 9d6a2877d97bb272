//! Hilbert bases of pointed cones and the special lattice points of `P_1(A)`.

mod basis;
mod semigroup;
mod special;

pub use basis::{
    candidate_box_radius, candidate_set, cone_box_points, fundamental_points, hilbert_basis,
    hilbert_basis_with_cap, is_irreducible, triangulation, verify_hilbert_basis, BasisReport,
    HilbertBasis, DEFAULT_MINOR_CAP,
};
pub use semigroup::Representer;
pub use special::{pigeonhole_point, support_minimal_element};
