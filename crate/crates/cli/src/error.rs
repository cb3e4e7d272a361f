use thiserror::Error;

/// CLI failures, split by exit status: 1 for bad input, 2 for fits that fail.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("fit failed: {0}")]
    Fit(String),
    /// A replayed run whose results differ from the recorded ones.
    #[error("replay mismatch: {0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Fit(_) | CliError::Mismatch(_) => 2,
        }
    }

    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}

/// Parameter and configuration problems are usage errors; everything the
/// estimation machinery reports is a fit failure.
impl From<expcomp::Error> for CliError {
    fn from(e: expcomp::Error) -> Self {
        use expcomp::Error as E;
        match e {
            E::InvalidParameter { .. } | E::Domain { .. } => CliError::Usage(e.to_string()),
            other => CliError::Fit(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
