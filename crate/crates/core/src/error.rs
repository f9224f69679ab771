use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("lattice basis rows are linearly dependent")]
    DependentBasis,

    #[error("point is not in the lattice: {0}")]
    NotInLattice(String),

    #[error("zero vector has no primitive generator")]
    ZeroVector,

    #[error("lattices do not match: {0}")]
    LatticeMismatch(String),

    #[error("invalid root system: {0}")]
    InvalidRootSystem(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("points span a {got}-dimensional affine space, lattice has rank {rank}")]
    LowerDimensional { got: usize, rank: usize },

    #[error("region is unbounded")]
    Unbounded,

    #[error("region is empty")]
    EmptyRegion,

    #[error("not a lattice polytope: {0}")]
    NotLatticePolytope(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("face selection is empty")]
    EmptyFace,

    #[error("fiber graph exceeded the cap of {cap} nodes")]
    FiberCapExceeded { cap: usize },

    #[error("interpolation inconsistent: {0}")]
    Interpolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("element is not in the semigroup")]
    NotInSemigroup,

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
