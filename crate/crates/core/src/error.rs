use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    /// Quadrature did not reach the requested tolerance.
    #[error(
        "quadrature did not converge for {context}: value {value:e}, \
         last correction {correction:e}, {panels} panels"
    )]
    Numerical {
        context: String,
        value: f64,
        correction: f64,
        panels: usize,
    },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("congestion target {target} not reached at the search cap M={cap} (Pi={pi_at_cap})")]
    SearchExhausted {
        cap: u64,
        pi_at_cap: f64,
        target: f64,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

/// Rejects negative or non-finite values.
pub(crate) fn check_nonnegative(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(
            name,
            format!("must be finite and >= 0, got {value}"),
        ))
    }
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(
            name,
            format!("must be finite and > 0, got {value}"),
        ))
    }
}
