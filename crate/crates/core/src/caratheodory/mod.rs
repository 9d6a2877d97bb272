//! Short integer Carathéodory decompositions over a Hilbert basis.

mod decomposition;
mod descent;
mod lp_rounding;
mod sigma;
mod sweep;

pub use decomposition::{verify_decomposition, Decomposition, Strategy, Verification};
pub use descent::{
    certified_bound, decompose_face_descent, DescentAction, DescentStep, DescentTrace,
};
pub use lp_rounding::{
    d_membership, d_membership_with_guard, decompose_lp_rounding, integral_point_of_q,
    EligibilityReport, DEFAULT_STRIP_GUARD,
};
pub use sigma::{cr_box, default_cap, density, sigma, CrBox, DensityRow, SigmaSolver};
pub use sweep::par_map_with;
