use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("ill-conditioned: {what} (|value| = {magnitude:.3e})")]
    Conditioning { what: String, magnitude: f64 },
    #[error("accuracy target missed: {what} (achieved {achieved:.3e}, suggested size {suggested})")]
    Accuracy {
        what: String,
        achieved: f64,
        suggested: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
