use thiserror::Error;

pub type Result<T, E = BggError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum BggError {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("subspace is not contained in the ambient subspace")]
    NotContained,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("algebra mismatch: {0}")]
    KindMismatch(String),

    #[error("window mismatch: {0}")]
    WindowMismatch(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("the zero module is not allowed here")]
    ZeroModule,

    #[error("module is not generated in a single degree (generator degrees {0:?})")]
    NotSingleDegree(Vec<i32>),

    #[error("module is not linear: beta[{row}][{degree}] = {value} off the diagonal")]
    NotLinear { row: usize, degree: i32, value: usize },

    #[error("relation violated: {0}")]
    Violation(crate::grmodule::Violation),

    #[error("L_xi fiber dimension varies ({first} vs {other}): not a vector bundle")]
    NotABundle { first: usize, other: usize },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
