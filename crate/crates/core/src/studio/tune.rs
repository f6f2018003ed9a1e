use serde::Serialize;

use crate::error::{Error, Result};
use crate::lumped::DesignInputs;

use super::pipeline::{derive, DerivedParameters};
use super::quantity::{Parameter, Quantity};

pub const DEFAULT_TUNE_TOLERANCE: f64 = 1e-6;
const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct TuneSpec {
    pub parameter: Parameter,
    pub target: Quantity,
    pub target_value: f64,
    pub bracket: (f64, f64),
    /// Relative tolerance on the target quantity.
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TuneResult {
    pub parameter: &'static str,
    pub value: f64,
    pub target: &'static str,
    pub target_value: f64,
    pub achieved: f64,
    pub iterations: usize,
    #[serde(skip)]
    pub derived: DerivedParameters,
}

struct Probe {
    x: f64,
    residual: f64,
    derived: DerivedParameters,
}

/// Bisection on `target(derive(inputs with parameter = x)) - target_value`
/// over the bracket.
pub fn tune(inputs: &DesignInputs, spec: &TuneSpec) -> Result<TuneResult> {
    let (mut lo, mut hi) = spec.bracket;
    if !(lo.is_finite() && hi.is_finite()) || lo == hi {
        return Err(Error::Contract(format!("degenerate bracket [{lo:e}, {hi:e}]")));
    }
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    if spec.tolerance.is_nan() || spec.tolerance <= 0.0 {
        return Err(Error::domain("tolerance", spec.tolerance, "must be strictly positive"));
    }

    let scale = if spec.target_value == 0.0 { 1.0 } else { spec.target_value.abs() };
    let goal = spec.tolerance * scale;
    let probe = |x: f64| -> Result<Probe> {
        let derived = derive(&spec.parameter.with(inputs, x))?;
        let value = spec.target.extract(&derived).ok_or_else(|| {
            Error::Convergence(format!(
                "{} is undefined at {} = {x:e}",
                spec.target.name(),
                spec.parameter.name()
            ))
        })?;
        Ok(Probe {
            x,
            residual: value - spec.target_value,
            derived,
        })
    };
    let finish = |p: Probe, iterations: usize| TuneResult {
        parameter: spec.parameter.name(),
        value: p.x,
        target: spec.target.name(),
        target_value: spec.target_value,
        achieved: p.residual + spec.target_value,
        iterations,
        derived: p.derived,
    };

    let low = probe(lo)?;
    if low.residual.abs() <= goal {
        return Ok(finish(low, 0));
    }
    let high = probe(hi)?;
    if high.residual.abs() <= goal {
        return Ok(finish(high, 0));
    }
    if low.residual.signum() == high.residual.signum() {
        return Err(Error::Bracketing {
            lo,
            hi,
            f_lo: low.residual + spec.target_value,
            f_hi: high.residual + spec.target_value,
        });
    }

    let mut low = low;
    let mut high = high;
    for iteration in 1..=MAX_BISECTIONS {
        let mid = 0.5 * (low.x + high.x);
        if mid <= low.x || mid >= high.x {
            break;
        }
        let m = probe(mid)?;
        if m.residual.abs() <= goal {
            return Ok(finish(m, iteration));
        }
        if m.residual.signum() == low.residual.signum() {
            low = m;
        } else {
            high = m;
        }
    }
    Err(Error::Convergence(format!(
        "bracket collapsed to [{:e}, {:e}] without reaching {} = {:e} within relative tolerance {:e}; \
         the objective may be discontinuous there",
        low.x,
        high.x,
        spec.target.name(),
        spec.target_value,
        spec.tolerance
    )))
}
