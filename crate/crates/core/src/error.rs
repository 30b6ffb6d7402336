use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Weights not coprime, or `l2` shares a factor with `w1 * w2`.
    #[error("gcd violation: {0}")]
    GcdViolation(String),

    /// A parameter is outside its admissible range (g, n, w1, w2, l2 must be >= 1).
    #[error("range violation: {0}")]
    RangeViolation(String),

    #[error("bad genus {0}: surface genus must be at least 1")]
    BadGenus(i64),

    /// The integer matrix does not carry source relations into target relations.
    #[error("incompatible map: {0}")]
    IncompatibleMap(String),

    #[error("validation failure in `{check}`: {detail}")]
    ValidationFailure { check: String, detail: String },
}

impl Error {
    /// The variant name, e.g. `GcdViolation`.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::GcdViolation(_) => "GcdViolation",
            Error::RangeViolation(_) => "RangeViolation",
            Error::BadGenus(_) => "BadGenus",
            Error::IncompatibleMap(_) => "IncompatibleMap",
            Error::ValidationFailure { .. } => "ValidationFailure",
        }
    }

    pub(crate) fn validation(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::ValidationFailure {
            check: check.into(),
            detail: detail.into(),
        }
    }
}
