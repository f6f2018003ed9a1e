use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the physical domain of the formula.
    #[error("domain error: {field} = {value:e} ({reason})")]
    Domain {
        field: String,
        value: f64,
        reason: &'static str,
    },

    /// The caller violated a structural precondition (shapes, symmetry, counts).
    #[error("contract violation: {0}")]
    Contract(String),

    /// An iterative routine failed to converge.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// The tuning bracket does not straddle the target.
    #[error(
        "bracket [{lo:e}, {hi:e}] does not straddle the target: objective is {f_lo:e} at lo and {f_hi:e} at hi"
    )]
    Bracketing { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    /// Dressed states could not be assigned to unique bare labels.
    #[error("ambiguous dressed-state labeling: {0}")]
    Labeling(String),

    /// Resolving a notch needs a curve that actually dips.
    #[error("unresolved notch: {0}")]
    UnresolvedNotch(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("invalid design file: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(field: impl Into<String>, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            field: field.into(),
            value,
            reason,
        }
    }

    pub(crate) fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// True for failures of a numerical procedure rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Convergence(_)
            | Error::Bracketing { .. }
            | Error::Labeling(_)
            | Error::UnresolvedNotch(_) => true,
            Error::Stage { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}

/// Require `value > 0` (and finite).
pub(crate) fn positive(field: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(field, value, "must be strictly positive"))
    }
}

/// Require `value >= 0` (and finite).
pub(crate) fn non_negative(field: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(field, value, "must be non-negative"))
    }
}

/// Non-fatal conditions surfaced alongside a result.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    /// Detuning is not large compared with the coupling; second-order
    /// dispersive formulas are unreliable.
    DispersiveValidity {
        transition: &'static str,
        detuning_hz: f64,
        coupling_hz: f64,
    },
    /// Charge-basis levels moved by more than the tolerance when the
    /// truncation was enlarged.
    TruncationNotConverged { truncation: usize, max_relative_change: f64 },
    /// The sampled span may not resolve the dip.
    SpanTooNarrow { span_hz: f64, kappa_hz: f64 },
    /// Zero coupling; the Purcell T1 is unbounded.
    UnboundedT1,
    /// The dressed-state oracle could not run on this design.
    OracleUnavailable { reason: String },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::DispersiveValidity {
                transition,
                detuning_hz,
                coupling_hz,
            } => write!(
                f,
                "dispersive validity: |detuning| of {transition} = {:.6e} Hz is below 10 g = {:.6e} Hz",
                detuning_hz.abs(),
                10.0 * coupling_hz
            ),
            Warning::TruncationNotConverged {
                truncation,
                max_relative_change,
            } => write!(
                f,
                "charge basis truncation N = {truncation} not converged (relative change {max_relative_change:e})"
            ),
            Warning::SpanTooNarrow { span_hz, kappa_hz } => write!(
                f,
                "span {span_hz:e} Hz is narrower than 4 kappa = {:e} Hz",
                4.0 * kappa_hz
            ),
            Warning::UnboundedT1 => write!(f, "zero coupling: Purcell T1 is unbounded"),
            Warning::OracleUnavailable { reason } => {
                write!(f, "dressed-state oracle unavailable: {reason}")
            }
        }
    }
}
