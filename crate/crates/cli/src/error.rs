use thiserror::Error;

/// Failures mapped onto the stable exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or invalid input, bad flags: exit 1.
    #[error("{0}")]
    Input(String),
    /// An exponential search refused the instance size: exit 2.
    #[error("{0}")]
    Guard(String),
    /// A checked property failed: exit 3.
    #[error("{0}")]
    Violation(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Guard(_) => 2,
            CliError::Violation(_) => 3,
        }
    }
}

impl From<fairmech::Error> for CliError {
    fn from(e: fairmech::Error) -> Self {
        match e {
            fairmech::Error::GuardExceeded { .. } | fairmech::Error::SearchLimit(_) => CliError::Guard(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;
    use fairmech::SizeGuard;

    #[test]
    fn exit_codes_are_stable() {
        assert_eq!(CliError::Input(String::new()).exit_code(), 1);
        assert_eq!(CliError::Guard(String::new()).exit_code(), 2);
        assert_eq!(CliError::Violation(String::new()).exit_code(), 3);
    }

    #[test]
    fn library_errors_map_to_codes() {
        let guard = fairmech::Error::GuardExceeded {
            m: 20,
            n: 2,
            guard: SizeGuard::ORACLE,
            hint: "",
        };
        assert_eq!(CliError::from(guard).exit_code(), 2);
        assert_eq!(CliError::from(fairmech::Error::MissingEpsilon).exit_code(), 1);
    }
}
