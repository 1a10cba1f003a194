use thiserror::Error;

/// Errors raised by the kernel.
///
/// The variants are grouped so that front ends can map them onto exit
/// codes: parse problems, semantic or validation failures, and size guards.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("flavor mismatch: {0}")]
    Flavor(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("skeleton bound violated: {0}")]
    SkeletonBound(String),

    #[error("size guard exceeded: {0}")]
    Guard(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }

    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! bail {
    ($variant:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$variant(format!($($arg)*)))
    };
}
pub(crate) use bail;

macro_rules! ensure {
    ($cond:expr, $variant:ident, $($arg:tt)*) => {
        if !$cond {
            return Err($crate::error::Error::$variant(format!($($arg)*)));
        }
    };
}
pub(crate) use ensure;
