use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PencilError {
    #[error("matrix is singular")]
    SingularMatrix,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("inconsistent stacking at step {step}, block {block}")]
    InconsistentStacking { step: usize, block: usize },

    #[error("pencil is not regular")]
    NotRegular,

    #[error("coupling between diagonal blocks could not be removed")]
    CouplingUnsolvable,

    #[error("initial value problem does not have a unique solution")]
    NotUnique,

    #[error("initial condition is inconsistent: no trajectory passes through it")]
    Inconsistent,

    #[error("free input source exhausted after {consumed} values")]
    FreeInputsExhausted { consumed: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = PencilError> = std::result::Result<T, E>;
