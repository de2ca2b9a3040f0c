use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: operands live in different polynomial rings")]
    RingMismatch,

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("generator {0} is not square-free")]
    NotSquareFree(String),

    #[error("generating set is not minimal: {0}")]
    NotMinimal(String),

    #[error("generators do not all have the same total degree")]
    UnequalDegrees,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
}

impl Error {
    /// Stable machine-readable tag, used by the command line front end.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::RingMismatch => "ring_mismatch",
            Error::ExponentOverflow => "exponent_overflow",
            Error::NotSquareFree(_) => "not_square_free",
            Error::NotMinimal(_) => "not_minimal",
            Error::UnequalDegrees => "unequal_degrees",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Malformed(_) => "malformed",
            Error::Parse { .. } => "parse",
            Error::LimitExceeded(_) => "limit_exceeded",
        }
    }
}
