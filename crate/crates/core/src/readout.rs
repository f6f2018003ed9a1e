//! Feedline transmission past a side-coupled (notch) resonator whose
//! frequency is pulled by ±χ depending on the qubit state.

use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coupling::CouplingParameters;
use crate::error::{positive, Error, Result, Warning};
use crate::units::Frequency;

/// Exact header of the curve CSV.
pub const CSV_HEADER: &str = "frequency_hz,re_s21,im_s21,abs_s21";

/// Notch depth (1 - min |S21|²) below which a curve counts as flat.
const MIN_RESOLVED_DEPTH: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QubitState {
    Ground,
    Excited,
}

impl QubitState {
    pub fn name(self) -> &'static str {
        match self {
            QubitState::Ground => "ground",
            QubitState::Excited => "excited",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadoutModel {
    pub f_r_loaded: Frequency,
    pub chi: Frequency,
    pub q_ext: f64,
    /// `None` means no internal loss.
    pub q_internal: Option<f64>,
}

impl ReadoutModel {
    pub fn from_coupling(coupling: &CouplingParameters, q_internal: Option<f64>) -> Self {
        ReadoutModel {
            f_r_loaded: coupling.f_r_loaded,
            chi: coupling.chi_total,
            q_ext: coupling.q_ext,
            q_internal,
        }
    }

    pub fn q_total(&self) -> f64 {
        match self.q_internal {
            Some(q_i) => 1.0 / (1.0 / self.q_ext + 1.0 / q_i),
            None => self.q_ext,
        }
    }

    /// Ground state sits at f_r + χ, excited at f_r - χ.
    pub fn state_frequency(&self, state: QubitState) -> Frequency {
        match state {
            QubitState::Ground => Frequency(self.f_r_loaded.0 + self.chi.0),
            QubitState::Excited => Frequency(self.f_r_loaded.0 - self.chi.0),
        }
    }

    /// S21(f) = 1 - (Q/Q_ext) / (1 + 2i Q (f - f_s)/f_s).
    pub fn s21(&self, state: QubitState, f: Frequency) -> Complex64 {
        let f_s = self.state_frequency(state).0;
        let q = self.q_total();
        let denom = Complex64::new(1.0, 2.0 * q * (f.0 - f_s) / f_s);
        Complex64::new(1.0, 0.0) - (q / self.q_ext) / denom
    }

    fn validate(&self) -> Result<()> {
        positive("f_r_loaded", self.f_r_loaded.0)?;
        positive("Q_ext", self.q_ext)?;
        if let Some(q_i) = self.q_internal {
            positive("Q_internal", q_i)?;
        }
        if !self.chi.0.is_finite() {
            return Err(Error::domain("chi", self.chi.0, "must be finite"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransmissionPoint {
    pub frequency: Frequency,
    pub s21: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransmissionCurve {
    pub qubit_state: QubitState,
    /// Strictly increasing in frequency.
    pub points: Vec<TransmissionPoint>,
    /// Location of the |S21| minimum, refined between grid points.
    pub f_notch: Frequency,
    /// Full width at half depth of the |S21|² dip; `None` if a half-depth
    /// crossing falls outside the sampled span.
    pub fwhm: Option<Frequency>,
    /// 1 - min |S21|².
    pub depth: f64,
    pub resolved: bool,
    #[serde(skip)]
    pub warnings: Vec<Warning>,
}

/// Samples S21 on `n_points` evenly spaced frequencies covering
/// f_r_loaded ± span/2.
pub fn s21_curve(
    model: &ReadoutModel,
    state: QubitState,
    span: Frequency,
    n_points: usize,
) -> Result<TransmissionCurve> {
    model.validate()?;
    positive("span", span.0)?;
    if n_points < 3 {
        return Err(Error::Contract(format!("need at least 3 points, got {n_points}")));
    }

    let center = model.f_r_loaded.0;
    let step = span.0 / (n_points - 1) as f64;
    let mid = (n_points - 1) as f64 / 2.0;
    let points: Vec<TransmissionPoint> = (0..n_points)
        .into_par_iter()
        .map(|i| {
            let frequency = Frequency(center + (i as f64 - mid) * step);
            TransmissionPoint {
                frequency,
                s21: model.s21(state, frequency),
            }
        })
        .collect();

    let mut warnings = Vec::new();
    let kappa = model.f_r_loaded.0 / model.q_total();
    if span.0 < 4.0 * kappa {
        warnings.push(Warning::SpanTooNarrow {
            span_hz: span.0,
            kappa_hz: kappa,
        });
    }

    let power: Vec<f64> = points.iter().map(|p| p.s21.norm_sqr()).collect();
    let (imin, &pmin) = power
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("n_points >= 3");

    let (f_notch, p_floor) = if imin > 0 && imin + 1 < power.len() {
        refine_minimum(
            points[imin].frequency.0,
            step,
            power[imin - 1],
            pmin,
            power[imin + 1],
        )
    } else {
        (points[imin].frequency.0, pmin)
    };
    let depth = 1.0 - p_floor;
    let resolved = depth > MIN_RESOLVED_DEPTH && imin > 0 && imin + 1 < power.len();

    let half = 1.0 - depth / 2.0;
    let fwhm = if resolved {
        let left = (1..=imin).rev().find(|&i| power[i - 1] >= half).map(|i| {
            interpolate_crossing(points[i - 1].frequency.0, power[i - 1], points[i].frequency.0, power[i], half)
        });
        let right = (imin..power.len() - 1).find(|&i| power[i + 1] >= half).map(|i| {
            interpolate_crossing(points[i].frequency.0, power[i], points[i + 1].frequency.0, power[i + 1], half)
        });
        match (left, right) {
            (Some(l), Some(r)) => Some(Frequency(r - l)),
            _ => None,
        }
    } else {
        None
    };

    Ok(TransmissionCurve {
        qubit_state: state,
        points,
        f_notch: Frequency(f_notch),
        fwhm,
        depth,
        resolved,
        warnings,
    })
}

/// Vertex of the parabola through three equally spaced samples.
fn refine_minimum(f_mid: f64, step: f64, left: f64, mid: f64, right: f64) -> (f64, f64) {
    let curvature = left - 2.0 * mid + right;
    if curvature <= 0.0 {
        return (f_mid, mid);
    }
    let offset = 0.5 * (left - right) / curvature;
    let value = mid - 0.25 * (left - right) * offset;
    (f_mid + offset * step, value)
}

fn interpolate_crossing(f0: f64, p0: f64, f1: f64, p1: f64, level: f64) -> f64 {
    if p1 == p0 {
        return 0.5 * (f0 + f1);
    }
    f0 + (level - p0) * (f1 - f0) / (p1 - p0)
}

/// |f_notch(ground) - f_notch(excited)|.
pub fn notch_separation(ground: &TransmissionCurve, excited: &TransmissionCurve) -> Result<Frequency> {
    for curve in [ground, excited] {
        if !curve.resolved {
            return Err(Error::UnresolvedNotch(format!(
                "{} curve has no interior dip (depth {:e})",
                curve.qubit_state.name(),
                curve.depth
            )));
        }
    }
    let same_grid = ground.points.len() == excited.points.len()
        && ground
            .points
            .iter()
            .zip(&excited.points)
            .all(|(a, b)| a.frequency == b.frequency);
    if !same_grid {
        return Err(Error::Contract("curves are sampled on different grids".to_string()));
    }
    Ok(Frequency((ground.f_notch.0 - excited.f_notch.0).abs()))
}

/// Writes the curve as CSV with [`CSV_HEADER`], one row per point.
pub fn write_csv<W: Write>(curve: &TransmissionCurve, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for p in &curve.points {
        writeln!(out, "{},{},{},{}", p.frequency.0, p.s21.re, p.s21.im, p.s21.norm())?;
    }
    Ok(())
}
