use thiserror::Error;

/// Errors shared across the whole toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero element not allowed here")]
    ZeroElement,
    #[error("the zero function has no valuation")]
    ZeroValuation,
    #[error("element is not integral at the place")]
    NotIntegral,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("field order overflows the supported range")]
    OrderOverflow,
    #[error("singular curve: discriminant is zero")]
    SingularCurve,
    #[error("unsupported characteristic {p}: operation requires p > 3")]
    UnsupportedCharacteristic { p: u64 },
    #[error("l = {l} equals the field characteristic")]
    LEqualsCharacteristic { l: u64 },
    #[error("l = {l} exceeds the supported bound {bound}")]
    LBoundExceeded { l: u64, bound: u64 },
    #[error("enumeration bound exceeded: need {needed}, bound is {bound}")]
    EnumBoundExceeded { needed: u64, bound: u64 },
    #[error("candidate cap exceeded: need {needed}, cap is {cap}")]
    CandidateCapExceeded { needed: u64, cap: u64 },
    #[error("invalid kernel polynomial: {reason}")]
    InvalidKernel { reason: String },
    #[error("operation requires {expected} reduction")]
    WrongReductionType { expected: &'static str },
    #[error("invalid place: {0}")]
    InvalidPlace(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("search exhausted without a decision: {0}")]
    SearchExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
