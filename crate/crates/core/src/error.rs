use thiserror::Error;

use crate::text::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} of the zero polynomial")]
    ZeroPolynomial(&'static str),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("radical requested for an ideal of dimension {0} > 0")]
    PositiveDimension(i64),
    #[error("expected an order-0 polynomial, got order {0}")]
    PositiveOrder(u32),
    #[error("order reduction needs order >= 1")]
    ZeroOrderSystem,
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("descent chain stalled at stage {stage}: dimension {dim} did not drop below {prev}")]
    DimensionDidNotDrop { stage: usize, prev: i64, dim: i64 },
    #[error("descent chain exceeded {0} stages")]
    StageLimit(usize),
    #[error("lemma check failed: {0}")]
    LemmaViolation(String),
    #[error("{0} is unknown: not found within its cap")]
    Undetermined(String),
    #[error("not a semiexplicit system: {0}")]
    NotSemiexplicit(String),
}
