use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is reducible over the rationals")]
    Reducible,
    #[error("polynomials have a common factor")]
    NotCoprime,
    #[error("element does not lie in the field generated by the base number")]
    NotInField,
    #[error("rational input where an irrational number is required")]
    Rational,
    #[error("precision budget exhausted: {0}")]
    Precision(String),
    #[error("Hensel lifting failed: {0}")]
    Hensel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Error {
        Error::Invalid(msg.into())
    }
}
