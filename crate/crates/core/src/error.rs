use thiserror::Error;

/// Errors raised by the exact kernels, the verification suites and the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("mixed radicals: sqrt({0}) combined with sqrt({1})")]
    MixedRadicals(String, String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("irregular branch: {0}")]
    IrregularBranch(String),
    #[error("refinement exceeded {0} iterations")]
    Precision(usize),
    #[error("profile error: {0}")]
    Profile(String),
    #[error("resource budget exceeded")]
    BudgetExceeded,
}

pub type Result<T> = std::result::Result<T, Error>;
