use thiserror::Error;

/// Errors raised across the toolkit.
///
/// The variants map onto the CLI exit-code contract: domain errors are usage
/// errors (2), resource-cap violations are 3, consistency and equivalence
/// failures are 4.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource cap exceeded: dimension {requested} > cap {cap}")]
    ResourceCap { requested: usize, cap: usize },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("equivalence failure: {0}")]
    Equivalence(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    /// Process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Parse(_) => 2,
            Error::ResourceCap { .. } => 3,
            Error::Consistency(_) | Error::Equivalence(_) => 4,
            Error::Io(_) | Error::Json(_) => 2,
        }
    }

    /// Stable machine-readable tag used in structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::ResourceCap { .. } => "resource_cap",
            Error::Consistency(_) => "consistency",
            Error::Equivalence(_) => "equivalence",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
