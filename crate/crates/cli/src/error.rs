use std::path::PathBuf;

/// Failures of a CLI invocation, each mapped to a stable exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Validation(ergokit::Error),
    #[error("unsupported Hamiltonian: {0}")]
    UnsupportedHamiltonian(ergokit::Error),
    #[error("output encoding failed: {0}")]
    Encode(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Read { .. } | CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::UnsupportedHamiltonian(_) => 4,
            CliError::Write { .. } | CliError::Encode(_) => 1,
        }
    }
}

impl From<ergokit::Error> for CliError {
    fn from(err: ergokit::Error) -> Self {
        if err.is_unsupported_hamiltonian() {
            CliError::UnsupportedHamiltonian(err)
        } else {
            CliError::Validation(err)
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Parse(err.to_string())
    }
}
