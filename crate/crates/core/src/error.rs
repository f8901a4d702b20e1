//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is out of range or inconsistent. `key` names the field
    /// so callers (CLI, config files, FFI) can point at the offender.
    #[error("invalid parameter `{key}`: {message}")]
    InvalidParam { key: &'static str, message: String },

    #[error("unknown scenario `{0}` (expected A, B, C, D, E, Aprime, Bprime or a config file path)")]
    UnknownScenario(String),

    #[error("unknown field `{field}`; valid fields: {valid}")]
    UnknownField { field: String, valid: String },

    #[error("config file error: {0}")]
    ConfigParse(String),

    /// Tail fit rejected: fewer than `needed` observations at or above k_min.
    #[error("insufficient tail data: need at least {needed} degrees >= k_min, got {got}")]
    InsufficientTail { needed: usize, got: usize },

    /// Tail fit rejected: all tail degrees identical, likelihood unbounded.
    #[error("degenerate tail: all {count} tail degrees equal {value}")]
    DegenerateTail { value: u32, count: usize },

    #[error("power iteration did not converge within {max_iter} iterations (last residual {residual:.3e})")]
    NoConvergence { max_iter: usize, residual: f64 },

    #[error("run {run_index} failed: {source}")]
    RunFailed {
        run_index: u32,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by user-supplied configuration (exit code 1)
    /// as opposed to runtime failures (exit code 2).
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::InvalidParam { .. }
                | Error::UnknownScenario(_)
                | Error::UnknownField { .. }
                | Error::ConfigParse(_)
        )
    }
}

pub(crate) fn invalid(key: &'static str, message: impl Into<String>) -> Error {
    Error::InvalidParam {
        key,
        message: message.into(),
    }
}
