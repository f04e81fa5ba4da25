use thiserror::Error;

/// Failure modes of a command, each with a fixed exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("no certified equilibrium found")]
    NoCertifiedSolution,
    #[error("verification failed")]
    VerificationFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::NoCertifiedSolution => 2,
            CliError::VerificationFailed => 3,
        }
    }
}

impl From<cbgame_core::Error> for CliError {
    fn from(e: cbgame_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
