use thiserror::Error;

use crate::space::Universe;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {point} does not belong to universe {universe}")]
    VariantMismatch { point: String, universe: Universe },

    #[error("universe mismatch: {left} vs {right}")]
    UniverseMismatch { left: Universe, right: Universe },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("region {0} has infinite measure")]
    InfiniteMeasure(String),

    #[error("resource guard: {what} would exceed {limit} entries")]
    ResourceLimit { what: &'static str, limit: usize },

    #[error(transparent)]
    Parse(#[from] crate::dsl::ParseError),

    #[error("type error in `{expr}`: {message}")]
    Type { expr: String, message: String },
}

impl Error {
    /// Process exit code for the CLI: 1 parse/type, 2 invalid request, 3 resource guard.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Type { .. } => 1,
            Error::ResourceLimit { .. } => 3,
            _ => 2,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
