use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error("{0}")]
    Tolerance(String),
    #[error("audit failed: {0}")]
    Audit(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Tolerance(_) | CliError::Audit(_) => 1,
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Quadrature(_) => 3,
        }
    }
}

impl From<spinflip::Error> for CliError {
    fn from(e: spinflip::Error) -> Self {
        match e {
            spinflip::Error::Quadrature(_) => CliError::Quadrature(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}
