use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("not a subpartition: part {part} occurs {needed} times but only {available} are available")]
    NotSubpartition {
        part: u64,
        needed: u64,
        available: u64,
    },

    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("partition is not in class A{0}")]
    NotInClassA(String),

    #[error("partition is not in class B{0}")]
    NotInClassB(String),

    #[error("modulus d = {0} is not supported by the bijection (needs d >= 2)")]
    UnsupportedModulus(u64),

    #[error("enumeration budget exceeded: more than {cap} partitions")]
    BudgetExceeded { cap: u64 },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("truncation degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("series is not invertible: constant coefficient is {0}")]
    NotInvertible(String),

    #[error("exponent {exponent} is beyond the truncation degree {degree}")]
    OutOfRange { exponent: usize, degree: usize },
}

impl Error {
    /// Short stable name of the variant, used for structured CLI output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::NotSubpartition { .. } => "NotSubpartition",
            Error::Overflow(_) => "Overflow",
            Error::Domain(_) => "DomainError",
            Error::NotInClassA(_) => "NotInClassA",
            Error::NotInClassB(_) => "NotInClassB",
            Error::UnsupportedModulus(_) => "UnsupportedModulus",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::Internal(_) => "InternalError",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::NotInvertible(_) => "NotInvertible",
            Error::OutOfRange { .. } => "OutOfRange",
        }
    }

    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
