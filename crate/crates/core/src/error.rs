use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("rank {n} too small for series {series}")]
    RankTooSmall { series: char, n: usize },

    #[error("matrix size {0} too small for an orthogonal algebra (need at least 3)")]
    MatrixSizeTooSmall(usize),

    #[error("matrix does not lie in the orthogonal algebra: {0}")]
    NotInAlgebra(String),

    #[error("operator is not a vector field")]
    NotVectorField,

    #[error("operator is not homogeneous in degree")]
    NotHomogeneous,

    #[error("dimension {dim} exceeds cap {cap}")]
    CapExceeded { dim: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
