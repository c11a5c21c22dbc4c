use thiserror::Error;

/// Errors raised by the spectral kernels, norm evaluators and attainment deciders.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("{routine} did not converge after {iterations} iterations")]
    NoConvergence {
        routine: &'static str,
        iterations: usize,
    },

    #[error("rank index {k} out of range for dimension {dim}")]
    BadRank { k: usize, dim: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid diagonal model: {0}")]
    InvalidModel(String),

    #[error("invalid norm family: {0}")]
    InvalidFamily(String),

    #[error("invalid weight sequence: {0}")]
    InvalidWeight(String),

    #[error("selection does not preserve the structured tail: {0}")]
    UnsupportedSelection(String),

    #[error("norm family {0} cannot be evaluated on a diagonal model")]
    UnsupportedForModel(String),

    #[error("no closed-form adjoint for family {0}")]
    UnsupportedFamily(String),

    #[error("operator is zero")]
    ZeroOperator,

    #[error("no index M with s_M > s_(M+1): {0}")]
    NoImprovableIndex(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("horizon too small: {0}")]
    HorizonTooSmall(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
