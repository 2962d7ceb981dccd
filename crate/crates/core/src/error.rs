use thiserror::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by all subsystems.
///
/// The variants map onto the CLI exit codes: precondition violations
/// (`InvalidMatrix`, `JumpPoint`, `Precondition`, ...) exit 1, certified
/// arithmetic giving up (`PrecisionExhausted`, `Undecidable`) exits 2,
/// and `Internal` (a broken invariant that should be unreachable) exits 3.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Seifert matrix: {0}")]
    InvalidMatrix(String),

    #[error("signature undefined at a jump point: {0}")]
    JumpPoint(String),

    #[error("sign undecided after refining to {bits} fractional bits")]
    PrecisionExhausted { bits: u32 },

    #[error("angle comparison undecidable at the precision cap ({bits} bits)")]
    Undecidable { bits: u32 },

    #[error("enumeration cap exceeded: {needed} candidates, cap {cap}")]
    CapExceeded { needed: u128, cap: u128 },

    #[error("missing hypothesis {0}")]
    MissingHypothesis(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown knot: {0}")]
    UnknownKnot(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// Exit code for the CLI front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::PrecisionExhausted { .. } | Error::Undecidable { .. } => 2,
            Error::Internal(_) => 3,
            _ => 1,
        }
    }
}
