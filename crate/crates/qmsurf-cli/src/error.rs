use qmsurf_core::Error as CoreError;

/// Exit code 1 for bad input, 2 for internal inconsistencies (a Weil
/// violation means the counting itself went wrong, not the request).
#[derive(thiserror::Error, Debug)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }

    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InconsistentCounts { .. }
            | CoreError::NoFactorization { .. }
            | CoreError::Overflow
            | CoreError::SingularResidual => CliError::Internal(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weil_violations_map_to_exit_2() {
        let core = CoreError::InconsistentCounts { p: 7, detail: "x".into() };
        assert_eq!(CliError::from(core).exit_code(), 2);
        assert_eq!(CliError::from(CoreError::NotOddPrime(4)).exit_code(), 1);
        assert_eq!(CliError::input("nope").exit_code(), 1);
    }
}
