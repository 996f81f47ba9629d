use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// Each variant is one error class with a fixed process exit code,
/// see [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("cannot factor {0}: cofactor exceeds the trial-division bound")]
    FactorizationBound(u64),

    #[error("dispersion law `{0}` has no exact form")]
    NoExactForm(String),

    #[error("cannot combine radicals of degree {left} and {right}")]
    MixedDegree { left: u32, right: u32 },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("unsupported coefficient structure: {0}")]
    UnsupportedStructure(String),

    #[error("capacity exceeded: {what} count {count} is above the limit {limit}")]
    Capacity {
        what: &'static str,
        count: u128,
        limit: u128,
    },

    #[error("accuracy error: {0}")]
    Accuracy(String),

    #[error("integration diverged at T = {time}")]
    Divergence { time: f64 },

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("missing dependency: {0}")]
    Dependency(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code, unique per variant. Zero is reserved for success
    /// and 2 for command-line usage errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 3,
            Error::Domain(_) => 4,
            Error::Precondition(_) => 5,
            Error::NoExactForm(_) => 6,
            Error::Capacity { .. } => 7,
            Error::Accuracy(_) => 8,
            Error::Divergence { .. } => 9,
            Error::Inconsistency(_) => 10,
            Error::Dependency(_) => 11,
            Error::Io(_) => 12,
            Error::Overflow(_) => 13,
            Error::FactorizationBound(_) => 14,
            Error::MixedDegree { .. } => 15,
            Error::NotApplicable(_) => 16,
            Error::UnsupportedStructure(_) => 17,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Config(format!("json: {err}"))
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Io(std::io::Error::other(err))
    }
}
