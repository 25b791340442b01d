use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("could not parse configuration: {0}")]
    Toml(#[from] toml::de::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] eisenstein_core::Error),
}

impl HarnessError {
    /// Process exit code: 2 for configuration problems, 3 for numerical
    /// accuracy failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) | HarnessError::Toml(_) => 2,
            HarnessError::Core(eisenstein_core::Error::Accuracy { .. })
            | HarnessError::Core(eisenstein_core::Error::Conditioning { .. }) => 3,
            HarnessError::Core(eisenstein_core::Error::Domain(_)) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
