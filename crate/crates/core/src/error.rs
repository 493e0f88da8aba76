use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("not representable over Q: {0}")]
    NotRepresentable(String),
    #[error("degenerate image: {0}")]
    DegenerateImage(String),
    #[error("probe divergence after {0} refinements")]
    ProbeDivergence(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("not ray invariant at t = {0}")]
    NotRayInvariant(String),
    #[error("fit failure at t = {0}")]
    FitFailure(String),
    #[error("validation failure: {0}")]
    ValidationFailure(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("round cap of {0} reached")]
    NonTermination(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn prec_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InsufficientPrecision(msg.into()))
}
