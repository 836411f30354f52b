use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero polynomial has no root set")]
    ZeroPolynomial,

    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,

    #[error("tolerance must be positive")]
    NonPositiveTolerance,

    #[error("coefficient of q^({index}/8) requested at or past truncation q^({trunc}/8)")]
    PastTruncation { index: i64, trunc: i64 },

    #[error("cannot invert a series with no known nonzero coefficient")]
    ZeroLeadingCoefficient,

    #[error("empty precision window")]
    EmptyPrecisionWindow,

    #[error("substitution q -> q^{0} is not supported (power must be >= 1)")]
    BadSubstitution(i64),

    #[error("not a polynomial of stated degree {max_deg}")]
    NotPolynomial { max_deg: usize },

    #[error("insufficient truncation: need at least {required} grid units, have {available}")]
    InsufficientTruncation { required: i64, available: i64 },

    #[error("weight 0 excluded")]
    WeightZeroExcluded,

    #[error("determinant of slash matrix is {0}, expected 1")]
    BadDeterminant(i64),

    #[error("alpha must lie in (0, 1), got {0}")]
    AlphaOutOfRange(f64),

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("precision unattainable: {reason}; estimated truncation needed {required_trunc}")]
    PrecisionUnattainable { reason: String, required_trunc: i64 },

    #[error("precision unreachable within {cap} terms of direct summation (needs about {needed}); use the accelerated summation")]
    IterationCap { cap: u64, needed: f64 },

    #[error("angle {0} outside the open interval (0, pi)")]
    AngleOutOfRange(f64),

    #[error("requires k>15")]
    InterlaceRange,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
