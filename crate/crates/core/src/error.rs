use std::fmt;

use thiserror::Error;

/// Which extreme family a rejected sequence belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceClass {
    /// No singular sequence anywhere: sigma = 2 b.
    Enoki,
    /// No regular sequence anywhere: sigma = 3 b.
    InoueHirzebruch,
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceClass::Enoki => f.write_str("Enoki-type"),
            SurfaceClass::InoueHirzebruch => f.write_str("Inoue-Hirzebruch-type"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("not an intermediate sequence ({0})")]
    NotIntermediate(SurfaceClass),

    #[error("zero-length {0} sequence")]
    ZeroLength(&'static str),

    #[error("malformed cycle: {0}")]
    MalformedCycle(String),

    #[error("delta = 1 requires index 1, but the index is {index}")]
    DeltaInconsistent { index: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("singular intersection matrix")]
    SingularMatrix,

    #[error("gcd(j, k) = {gcd} for a simple component, expected 1")]
    GcdViolation { gcd: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax_error",
            Error::NotIntermediate(_) => "not_intermediate",
            Error::ZeroLength(_) => "zero_length",
            Error::MalformedCycle(_) => "malformed_cycle",
            Error::DeltaInconsistent { .. } => "delta_inconsistent",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::SingularMatrix => "singular_matrix",
            Error::GcdViolation { .. } => "gcd_violation",
            Error::Internal(_) => "internal",
        }
    }

    /// Errors that can only come from a bug, never from bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::SingularMatrix | Error::GcdViolation { .. } | Error::Internal(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
