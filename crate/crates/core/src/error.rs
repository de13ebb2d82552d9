use thiserror::Error;

/// Errors produced by the simulator.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum DofError {
    #[error("invalid ternary string {string:?}: {reason}")]
    InvalidStrategy { string: Vec<u8>, reason: String },

    #[error("invalid message assignment: {0}")]
    InvalidAssignment(String),

    #[error("cooperation order {found} is not supported here (at most {max})")]
    UnsupportedCooperation { found: usize, max: usize },

    #[error("subnetwork of size {found} exceeds the limit of {limit}")]
    SizeGuard { found: usize, limit: usize },

    #[error("converse certificates are only constructed for N = 5 (got N = {0})")]
    UnsupportedSize(usize),

    #[error("assignment does not match the {0} scheme")]
    SchemeMismatch(String),

    #[error("curves do not cross in [{lo}, {hi}]")]
    NoCrossing { lo: f64, hi: f64 },

    #[error("invalid value for `{field}`: {reason}")]
    Config { field: String, reason: String },
}

impl DofError {
    pub(crate) fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        DofError::Config {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, DofError>;
