//! Crate-wide error type.

use crate::rat::Rat;

/// Errors raised by validation at type boundaries and by operation
/// preconditions.
///
/// [`Error::kind`] returns a stable machine-readable tag for each variant;
/// the CLI surfaces it as the `error_kind` field of diagnostic output.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed rational `{0}`; expected `p` or `p/q` with integer p, q")]
    ParseRat(String),

    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("weight {value} at `{label}` is outside {expected}")]
    WeightOutOfRange {
        label: String,
        value: Rat,
        expected: &'static str,
    },

    #[error("polarization degree {0} must be positive")]
    NonPositiveDegree(Rat),

    #[error("weights ({a}, {b}) must be coprime")]
    NotCoprime { a: u64, b: u64 },

    #[error("base pair is not K-semistable")]
    NotSemistable,

    #[error("cone is not klt")]
    NotKlt,

    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),

    #[error("unsupported dimension n = {0}; only n = 2 is implemented")]
    UnsupportedDimension(u32),

    #[error("adjunction parity fails at `{label}`: K.C + C^2 = {value} is odd")]
    AdjunctionParity { label: String, value: i64 },

    #[error("malformed intersection matrix: {0}")]
    MalformedMatrix(String),
}

impl Error {
    /// Stable tag identifying the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ParseRat(_) => "ParseError",
            Error::ZeroDenominator(_) => "ZeroDenominator",
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::WeightOutOfRange { .. } => "WeightOutOfRange",
            Error::NonPositiveDegree(_) => "NonPositiveDegree",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::NotSemistable => "NotSemistable",
            Error::NotKlt => "NotKlt",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::UnsupportedDimension(_) => "UnsupportedDimension",
            Error::AdjunctionParity { .. } => "AdjunctionParity",
            Error::MalformedMatrix(_) => "MalformedMatrix",
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
