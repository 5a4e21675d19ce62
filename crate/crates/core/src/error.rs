use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("variable index {index} out of range for a ring with {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("map has {got} components but the target ring has {expected} variables")]
    ArityMismatch { expected: usize, got: usize },
    #[error("polynomial is not exactly divisible")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation requires a non-constant polynomial")]
    ConstantInput,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("total degree exceeded the configured cap of {cap}")]
    DegreeCapExceeded { cap: u32 },
    #[error("all generators of the ideal are zero")]
    EmptyIdeal,
    #[error("polynomial does not vanish at the origin")]
    NotThroughOrigin,
    #[error("map component {index} has a nonzero constant term")]
    NotOriginPreserving { index: usize },
    #[error("pullback is identically zero")]
    ZeroPullback,
    #[error("truncated quotient dimension did not stabilize up to degree {cap} (last value {last_dim})")]
    CapExceededWithoutStabilization { cap: u32, last_dim: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no finite map found after {attempts} attempts")]
    GenerationExhausted { attempts: u32 },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("negative exponent at line {line}, column {column}")]
    NegativeExponent { line: usize, column: usize },
}
