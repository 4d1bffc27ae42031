use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("requested {digits} digits, at least {min} are required")]
    InsufficientPrecision { digits: u32, min: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("cannot parse {0:?} as a real number")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("method not applicable: {0}")]
    MethodInapplicable(String),

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable tag, used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InsufficientPrecision { .. } => "insufficient_precision",
            Error::DivisionByZero | Error::Domain(_) => "domain",
            Error::Range(_) => "range",
            Error::Parse(_) => "parse",
            Error::InvalidInput(_) => "invalid_input",
            Error::MethodInapplicable(_) => "method_inapplicable",
            Error::PrecisionExhausted(_) => "precision_exhausted",
            Error::Io(_) => "io",
        }
    }

    /// Whether the error comes from how the operation was invoked rather
    /// than from the computation itself.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InsufficientPrecision { .. } | Error::Parse(_) | Error::InvalidInput(_)
        )
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
