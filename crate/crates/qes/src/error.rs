//! Failures of a command-line run and their exit codes.

use qes_core::pipeline::QesError;

/// Exit status of a successful run.
pub const EXIT_OK: u8 = 0;
/// Exit status of a rejected argument or input file.
pub const EXIT_USAGE: u8 = 1;
/// Exit status of a numerical failure.
pub const EXIT_NUMERICAL: u8 = 2;
/// Exit status of a strict audit that found a mismatch.
pub const EXIT_STRICT: u8 = 3;

/// Anything that stops a run.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Invalid or missing argument.
    #[error("cli: {0}")]
    Usage(String),
    /// Malformed tabulated potential.
    #[error("cli: {path}: line {line}: {reason}")]
    PotentialFile {
        /// File that was read.
        path: String,
        /// 1-based line of the offending record.
        line: u64,
        /// What is wrong with it.
        reason: String,
    },
    /// Failure inside the library.
    #[error(transparent)]
    Qes(#[from] QesError),
    /// Output could not be written.
    #[error("cli: cannot write {path}: {source}")]
    Write {
        /// Target path.
        path: String,
        /// Underlying error.
        source: std::io::Error,
    },
}

impl CliError {
    /// Shorthand for a usage error.
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// Process exit status for this failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::PotentialFile { .. } | CliError::Write { .. } => EXIT_USAGE,
            CliError::Qes(e) if e.is_validation() => EXIT_USAGE,
            CliError::Qes(_) => EXIT_NUMERICAL,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qes_core::oracle::OracleError;

    #[test]
    fn exit_codes_follow_the_failure_kind() {
        assert_eq!(CliError::usage("x").exit_code(), EXIT_USAGE);
        let grid = QesError::from(OracleError::InvalidGrid("n must be at least 64"));
        assert_eq!(CliError::from(grid).exit_code(), EXIT_USAGE);
        let numeric = QesError::from(OracleError::DegenerateGrid);
        assert_eq!(CliError::from(numeric).exit_code(), EXIT_NUMERICAL);
    }
}
