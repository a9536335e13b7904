use thiserror::Error;

/// Every failure mode the library reports.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole at {0}")]
    Pole(String),
    #[error("light-cone singularity: {0}")]
    ConeSingularity(String),
    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("grazing incidence: {0}")]
    Grazing(String),
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },
    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name: name.to_string(),
        reason: reason.into(),
    }
}

pub(crate) fn require_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(name, format!("must be finite and > 0, got {v}")))
    }
}
