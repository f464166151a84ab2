use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid {name} = {value}: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("no open incoming channel: energy {energy} does not exceed the left-lead potential {lead_potential}")]
    NoOpenChannel { energy: f64, lead_potential: f64 },

    #[error("plane-wave basis is degenerate at threshold (k = 0); use the analytic-limit path")]
    ThresholdDegeneracy,

    #[error(
        "energy grid of {grid} points cannot resolve the bands in [{e_min}, {e_max}]; use at least {required} points"
    )]
    Resolution {
        grid: usize,
        required: usize,
        e_min: f64,
        e_max: f64,
    },

    #[error("{0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain { name, value, reason }
    }
}

/// Fails with [`Error::Domain`] unless `value` is finite and strictly positive.
pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(name, value, "must be finite and > 0"))
    }
}

pub(crate) fn require_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::domain(name, value, "must be finite"))
    }
}
