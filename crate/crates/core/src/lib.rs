//! Exact Hilbert bases of pointed rational cones and short integer
//! Carathéodory decompositions.

pub mod caratheodory;
pub mod error;
pub mod exactlin;
pub mod formats;
pub mod geometry;
pub mod hilbert;
pub mod instances;

pub use caratheodory::{Decomposition, DescentTrace, Strategy};
pub use error::{Error, Result};
pub use exactlin::{IntMatrix, IntVector};
pub use geometry::{ConeH, Polytope};
pub use hilbert::HilbertBasis;
