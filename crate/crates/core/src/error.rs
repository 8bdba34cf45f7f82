use thiserror::Error;

/// Errors raised by the engines and parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("zero exponent at byte {pos}; write the factor without the variable instead")]
    ZeroExponent { pos: usize },

    #[error("exponent overflow at byte {pos}")]
    ExponentOverflow { pos: usize },

    #[error("empty generator list")]
    EmptyIdeal,

    #[error("ambient variable count mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("the zero ideal has no Betti table beyond beta_0,0")]
    ZeroIdeal,

    #[error("the unit ideal has an empty quotient")]
    UnitIdeal,

    #[error("generator {0} is not squarefree")]
    NotSquarefree(String),

    #[error("{what} = {value} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("Hochster and Taylor tables disagree at (i={i}, j={j}): hochster={hochster}, taylor={taylor}")]
    CrossCheckMismatch {
        i: usize,
        j: usize,
        hochster: u64,
        taylor: u64,
    },

    #[error("{0}")]
    OutOfRange(String),

    #[error("operation is undefined on the void complex")]
    VoidComplex,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("unknown field `{0}` (expected GF(p) or Q)")]
    UnknownField(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("retry budget exhausted drawing instance {index}: {reason}")]
    RetryExhausted { index: u64, reason: String },

    #[error("report I/O: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
