use thiserror::Error;

use crate::caratheodory::DescentTrace;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("linear program is infeasible")]
    Infeasible,

    /// An unbounded maximisation over `{x >= 0 : Hx = b}` means the columns of
    /// `H` do not span a pointed cone.
    #[error("linear program is unbounded (input cone is not pointed)")]
    Unbounded,

    #[error("cone is not pointed")]
    NonPointed,

    #[error("polytope is unbounded")]
    UnboundedPolytope,

    #[error("point lies outside the cone")]
    OutsideCone,

    #[error("point lies outside the polyhedron")]
    OutsidePolyhedron,

    #[error("the zero vector is not allowed here")]
    ZeroVector,

    #[error("the affine hull of the face contains no lattice point")]
    LatticeFreeFace,

    #[error("invalid face: {0}")]
    InvalidFace(String),

    #[error("the unit parallelepiped contains no non-zero lattice point")]
    EmptyParallelepiped,

    #[error("pigeonhole argument needs n >= |det A| (n = {n}, |det A| = {det})")]
    PigeonholePrecondition { n: usize, det: String },

    #[error("the box of radius {delta} contains no cone point")]
    EmptyBox { delta: i64 },

    #[error("point is not generated by the given elements")]
    NotRepresentable,

    #[error("no representation with at most {cap} elements")]
    CapExceeded { cap: usize },

    #[error("enumeration guard exceeded: {what} ({count} > {limit})")]
    GuardExceeded {
        what: &'static str,
        count: usize,
        limit: usize,
    },

    #[error("face descent is stuck in dimension {dim}")]
    Stuck {
        dim: usize,
        trace: Box<DescentTrace>,
    },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
