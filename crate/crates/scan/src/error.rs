use thiserror::Error;
use tripod_core::TripodError;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numeric failure: {0}")]
    Numeric(#[from] TripodError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl RunError {
    /// 1 for bad input, 2 for numeric failures and output errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 1,
            Self::Numeric(_) | Self::Io(_) => 2,
        }
    }
}
