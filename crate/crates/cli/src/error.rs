use sectoria_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_VIOLATED: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input files.
    #[error("{0}")]
    Usage(String),
    /// Inputs parse but fail a mathematical precondition.
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Precondition(_) => EXIT_PRECONDITION,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::DimensionMismatch { .. }
            | Error::NotSquare { .. }
            | Error::IndexOutOfRange { .. }
            | Error::NonFinite
            | Error::InvalidAngle(_)
            | Error::InvalidSequence(_)
            | Error::TooLarge { .. }
            | Error::InvalidConfig(_) => CliError::Usage(e.to_string()),
            Error::Singular
            | Error::SingularLeadingBlock
            | Error::SingularBlock
            | Error::NotConverged { .. }
            | Error::NotPositiveDefinite
            | Error::NotHermitian
            | Error::NotAccretive
            | Error::NotAccretiveDissipative
            | Error::NotSectorial
            | Error::OmegaPrimeEmpty => CliError::Precondition(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
