use thiserror::Error;

/// Errors raised by the library.
///
/// Everything except [`Error::Invariant`] is a user-facing error (bad input,
/// exceeded budget); `Invariant` means an internal consistency check failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("negative exponent at offset {pos}")]
    NegativeExponent { pos: usize },

    #[error("arity {0} exceeds the supported maximum of {max}", max = crate::MAX_ARITY)]
    ArityTooLarge(usize),

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("variable index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },

    #[error("enumeration of {needed} points exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("operation requires a non-constant polynomial")]
    ConstantPolynomial,

    #[error("gcd of two zero polynomials is undefined")]
    BothZero,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Short machine-readable tag for the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::NegativeExponent { .. } => "negative_exponent",
            Error::ArityTooLarge(_) => "arity_too_large",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::NotPrime(_) => "not_prime",
            Error::BadModulus(_) => "bad_modulus",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::ConstantPolynomial => "constant_polynomial",
            Error::BothZero => "both_zero",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Invariant(_) => "invariant",
        }
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
