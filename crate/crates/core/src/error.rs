use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DgaError {
    /// Input data violates an algebraic identity or a structural invariant.
    #[error("validation failed: {0}")]
    Validation(String),
    /// A requested degree lies outside the range the object certifies.
    #[error("degree {degree} outside certified window [{lo}, {hi}]")]
    OutOfWindow { degree: i32, lo: i32, hi: i32 },
    /// A precondition of the operation does not hold for the given input.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// The request is well-formed but outside what the engine supports.
    #[error("unsupported scope: {0}")]
    Scope(String),
    /// A truncated computation did not stabilize.
    #[error("unstable truncation: {0}")]
    Unstable(String),
    /// An identity that must hold by construction failed.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, DgaError>;
