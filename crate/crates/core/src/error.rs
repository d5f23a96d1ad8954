use num_bigint::BigInt;
use thiserror::Error;

/// Library-wide error type.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot factor zero")]
    FactorZero,
    #[error("unfactored composite cofactor {0} (outside the guaranteed range)")]
    UnfactoredComposite(BigInt),
    #[error("composite modulus {0} is not a valid prime-field characteristic")]
    CompositeModulus(u64),
    #[error("factorization out of supported range: {0}")]
    FactorOutOfRange(String),
    #[error("ring context mismatch: {0}")]
    ContextMismatch(String),
    #[error("zero input not allowed: {0}")]
    ZeroInput(&'static str),
    #[error("computation exceeded the configured step limit ({0} reduction steps)")]
    StepLimit(usize),
    #[error("recursion depth limit {0} exceeded (implementation bug guard)")]
    DepthLimit(usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Semantic(String),
}

pub type Result<T> = std::result::Result<T, Error>;
