use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("invalid parameter `{key}`: {message}")]
    InvalidParameter { key: String, message: String },

    #[error("config: {0}")]
    Config(String),

    #[error(
        "CFL violation at t = {t:.6}: dt = {dt:.3e} exceeds limit {dt_max:.3e} \
         (max advecting speed {max_speed:.6e}, dx {dx:.6e})"
    )]
    CflViolation {
        t: f64,
        dt: f64,
        dt_max: f64,
        max_speed: f64,
        dx: f64,
    },

    #[error("non-finite coefficients at t = {t:.6}; last valid time {last_valid:.6}")]
    NonFinite { t: f64, last_valid: f64 },

    #[error("snapshot: {0}")]
    Snapshot(String),

    #[error("diagnostics: {0}")]
    Diagnostics(String),

    #[error("csv: {0}")]
    Csv(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(key: &str, message: impl Into<String>) -> Self {
        Error::InvalidParameter {
            key: key.to_string(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
