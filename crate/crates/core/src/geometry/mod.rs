//! Cones, polytopes, lattice points and face projections.

mod cone;
mod face;
mod polytope;

pub use cone::{cone_product, extreme_rays, ConeH, Membership, Position};
pub use face::{cone_face_projection, face_projection, projected_cone_matrix, FaceProjection};
pub(crate) use polytope::enumerate_box;
pub use polytope::{box_points, lattice_points, unit_parallelepiped, Polytope};
