use thiserror::Error;

use crate::rbindex::Census;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("invalid prime {0}: expected an odd prime in 3..=97")]
    InvalidPrime(u64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degenerate form: entry {0} is zero")]
    DegenerateForm(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("missing square roots: {0}")]
    MissingRoots(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("search budget exceeded after {explored} candidates; partial census is not a certificate")]
    BudgetExceeded { explored: u64, partial: Box<Census> },
}
