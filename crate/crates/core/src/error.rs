use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or mismatched input (dimensions, variable counts, levels).
    #[error("input error: {0}")]
    Input(String),
    /// A mathematical precondition of the operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// Evaluation hit a pole of a rational function.
    #[error("evaluation error: {0}")]
    Pole(String),
    #[error("morphism is nowhere surjective (det(ff*) vanishes identically)")]
    NowhereSurjective,
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
