use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lumped::DesignInputs;

use super::pipeline::derive;
use super::quantity::{Parameter, Quantity};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub parameter: Parameter,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub outputs: Vec<Quantity>,
}

impl SweepSpec {
    /// Evenly spaced grid, ascending, endpoints included.
    pub fn grid(&self) -> Result<Vec<f64>> {
        if !(self.from.is_finite() && self.to.is_finite()) {
            return Err(Error::Contract("sweep range must be finite".to_string()));
        }
        match self.steps {
            0 => Err(Error::Contract("sweep needs at least one step".to_string())),
            1 if self.from == self.to => Ok(vec![self.from]),
            1 => Err(Error::Contract("a single-step sweep needs from == to".to_string())),
            n if self.from < self.to => {
                let width = self.to - self.from;
                Ok((0..n)
                    .map(|i| {
                        if i == n - 1 {
                            self.to
                        } else {
                            self.from + width * i as f64 / (n - 1) as f64
                        }
                    })
                    .collect())
            }
            _ => Err(Error::Contract(format!(
                "sweep range must be ascending, got [{:e}, {:e}]",
                self.from, self.to
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    /// One entry per requested output; `None` if undefined or failed.
    pub outputs: Vec<Option<f64>>,
    /// Why the derivation failed at this point.
    pub error: Option<String>,
}

fn evaluate(inputs: &DesignInputs, spec: &SweepSpec, value: f64) -> SweepRow {
    match derive(&spec.parameter.with(inputs, value)) {
        Ok(d) => SweepRow {
            value,
            outputs: spec.outputs.iter().map(|q| q.extract(&d)).collect(),
            error: None,
        },
        Err(e) => SweepRow {
            value,
            outputs: vec![None; spec.outputs.len()],
            error: Some(e.to_string()),
        },
    }
}

/// One derivation per grid point, rows in ascending parameter order. Failing
/// points are flagged and the sweep continues.
pub fn sweep(inputs: &DesignInputs, spec: &SweepSpec, execution: Execution) -> Result<Vec<SweepRow>> {
    let grid = spec.grid()?;
    Ok(match execution {
        Execution::Sequential => grid.iter().map(|&v| evaluate(inputs, spec, v)).collect(),
        Execution::Parallel => grid.par_iter().map(|&v| evaluate(inputs, spec, v)).collect(),
    })
}

/// CSV with columns `<parameter>,<outputs...>,status`.
pub fn write_sweep_csv<W: Write>(spec: &SweepSpec, rows: &[SweepRow], mut out: W) -> std::io::Result<()> {
    let mut header = vec![spec.parameter.name().to_string()];
    header.extend(spec.outputs.iter().map(|q| q.name().to_string()));
    header.push("status".to_string());
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        let mut fields = vec![row.value.to_string()];
        fields.extend(row.outputs.iter().map(|v| v.map(|x| x.to_string()).unwrap_or_default()));
        fields.push(match &row.error {
            None => "ok".to_string(),
            Some(msg) => format!("\"error: {}\"", msg.replace('"', "'")),
        });
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}
