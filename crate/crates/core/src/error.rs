use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("DimensionMismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ZeroVector: operation requires a nonzero vector")]
    ZeroVector,

    #[error("ZeroOperator: operation requires a nonzero operator")]
    ZeroOperator,

    #[error("ZeroDirection: the direction operator is zero")]
    ZeroDirection,

    #[error("DegenerateBall: {0}")]
    DegenerateBall(String),

    #[error("EnumerationTooLarge: dim {dim} with {vertices} vertices exceeds the enumeration limit (dim <= 4, vertices <= 64); supply facets explicitly")]
    EnumerationTooLarge { dim: usize, vertices: usize },

    #[error("SpaceMismatch: operators act on different spaces")]
    SpaceMismatch,

    #[error("NotUnitVector: p-norm is {norm}, expected 1")]
    NotUnitVector { norm: f64 },

    #[error("InvalidExponent: p = {0} (need a finite p >= 1)")]
    InvalidExponent(f64),

    #[error("DegenerateRecovery: entry recovery is singular at p = 2")]
    DegenerateRecovery,

    #[error("InconsistentOracle: {0}")]
    InconsistentOracle(String),

    #[error("InvalidInput: {0}")]
    InvalidInput(String),
}
