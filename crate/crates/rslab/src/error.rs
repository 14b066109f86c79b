//! Crate-wide error type with machine-readable categories.
//!
//! Every failure maps to one of four categories so the CLI can report a
//! stable error class and exit code: `Usage` (2), `Guard` (3),
//! `Computation` (4), `Internal` (5).

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Stable error categories exposed through JSON output and exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Malformed parameters, contract violations by the caller.
    Usage,
    /// An enumeration or memory guard would be exceeded.
    Guard,
    /// A well-formed computation did not reach a result (e.g. trial cap).
    Computation,
    /// An internal invariant failed; always a bug.
    Internal,
}

impl ErrorCategory {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorCategory::Usage => 2,
            ErrorCategory::Guard => 3,
            ErrorCategory::Computation => 4,
            ErrorCategory::Internal => 5,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCategory::Usage => "usage",
            ErrorCategory::Guard => "guard",
            ErrorCategory::Computation => "computation",
            ErrorCategory::Internal => "internal",
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in F_{p}")]
    DivisionByZero { p: u64 },

    #[error("mixed fields: F_{left} vs F_{right}")]
    MixedFields { left: u64, right: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus is reducible: {factor} divides {modulus}")]
    ReducibleModulus { modulus: String, factor: String },

    #[error("repeated x-coordinate {x} in interpolation input")]
    RepeatedX { x: u64 },

    #[error("degree {degree} out of bounds (must be < {bound})")]
    DegreeBound { degree: String, bound: usize },

    #[error("guard exceeded: {what} requires {needed}, limit {limit} (raise with RSLAB_GUARD_OVERRIDE)")]
    GuardExceeded {
        what: &'static str,
        needed: String,
        limit: String,
    },

    #[error("radius {radius} outside the decoder's completeness bound for [{n},{k}] (agreement {agreement} needs weighted-degree room; fall back to the brute-force decoder)")]
    RadiusUnsupported {
        n: usize,
        k: usize,
        radius: usize,
        agreement: i64,
    },

    #[error("base is not primitive: order divides N/{witness}")]
    NotPrimitive { witness: String },

    #[error("trial cap {cap} exhausted: {context}")]
    TrialCapExhausted { cap: u64, context: String },

    #[error("invalid parameter: {0}")]
    Usage(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::DivisionByZero { .. }
            | Error::MixedFields { .. }
            | Error::NotPrime(_)
            | Error::ReducibleModulus { .. }
            | Error::RepeatedX { .. }
            | Error::DegreeBound { .. }
            | Error::RadiusUnsupported { .. }
            | Error::NotPrimitive { .. }
            | Error::Usage(_) => ErrorCategory::Usage,
            Error::GuardExceeded { .. } => ErrorCategory::Guard,
            Error::TrialCapExhausted { .. } => ErrorCategory::Computation,
            Error::Internal(_) => ErrorCategory::Internal,
        }
    }
}
