use thiserror::Error;

/// Failure of a subcommand, mapped onto the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] gb2d::Error),
    #[error("{failed} of {total} identities failed")]
    CheckFailed { failed: usize, total: usize },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 1 usage, 2 domain, 3 regime, 4 identity failure, 5 I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(e) if e.is_regime() => 3,
            CliError::Core(_) => 2,
            CliError::CheckFailed { .. } => 4,
            CliError::Io { .. } => 5,
        }
    }
}
