use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element is not a unit")]
    NotAUnit,
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("polynomial is not monic of degree >= 1")]
    NonMonic,
    #[error("ring is not finite")]
    InfiniteRing,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("coefficients of f are not central in the base ring; reduce with central_quotient first")]
    NonCentralCoefficients,
    #[error("degree {n} exceeds the cap of {cap} (raise it with --cap-override or SPLITRING_CAP)")]
    CapExceeded { n: usize, cap: usize },
    #[error("expected {expected} coefficients, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid ring table: {0}")]
    InvalidTable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
