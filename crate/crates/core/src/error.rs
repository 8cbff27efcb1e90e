use thiserror::Error;

/// Errors reported by cone constructions and lattice computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero vector where a nonzero lattice vector is required")]
    ZeroVector,
    #[error("empty input: at least one generator is required")]
    EmptyInput,
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("generators positively span a line; the cone is not strongly convex")]
    NotStronglyConvex,
    #[error("point does not lie in the cone")]
    NotInCone,
    #[error("cone is not simplicial; predicate undefined")]
    NotSimplicial,
    #[error("operation is only defined on a rank-2 lattice")]
    NotRank2,
    #[error("unbounded vertex set where a polytope is required")]
    Unbounded,
    #[error("coordinate exceeds the supported output range")]
    CoordinateOverflow,
    #[error("invariant violation: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for conditions caused by malformed user input, as opposed to
    /// internal invariant failures.
    pub fn is_user_error(&self) -> bool {
        !matches!(self, Error::Invariant(_) | Error::CoordinateOverflow)
    }
}
