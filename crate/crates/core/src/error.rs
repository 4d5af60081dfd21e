use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    InvalidPrime(u64),
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different primes ({0} and {1})")]
    MixedPrimes(u32, u32),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("prime bound {bound} too small: cofactor {cofactor} remains")]
    PrimeBoundTooSmall { bound: u64, cofactor: String },
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("p = 2 is not supported here: {0}")]
    EvenPrime(String),
    #[error("unsupported extension: {0}")]
    UnsupportedExtension(String),
    #[error("zero divisor or zero: {witness}")]
    ZeroDivisor { witness: String },
    #[error("radix must exceed 1, got {0}")]
    InvalidRadix(u64),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
