//! Qubit-resonator coupling, dispersive shifts, resonator loading by the
//! feedline, the Purcell T1 bound, and an exact-diagonalization oracle for
//! the dispersive shift.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::eigen::solve_dense_symmetric;
use crate::error::{non_negative, positive, Error, Result, Warning};
use crate::lumped::LumpedCircuit;
use crate::transmon::{PerturbativeTransmon, TransmonSpectrum};
use crate::units::{to_angular, Capacitance, Energy, Frequency, Inductance, Resistance, Voltage, CONSTANTS};

/// |Δ| below this multiple of g triggers a dispersive-validity warning.
pub const DISPERSIVE_VALIDITY_RATIO: f64 = 10.0;

const LOADED_FREQUENCY_TOLERANCE: f64 = 1e-15;
const LOADED_FREQUENCY_MAX_ITER: usize = 200;

/// V_rms = √(ħ ω_r / 2 C_r).
pub fn zero_point_voltage(f_r: Frequency, c_r: Capacitance) -> Result<Voltage> {
    positive("f_r", f_r.0)?;
    positive("C_r", c_r.0)?;
    Ok(Voltage(
        (CONSTANTS.reduced_planck * to_angular(f_r) / (2.0 * c_r.0)).sqrt(),
    ))
}

/// g_{n,n+1}/2π = √(n+1) · (2 β e V_rms / ħ) · (E_j / 32 E_c)^¼ / 2π.
pub fn coupling_strength(n: u32, beta: f64, v_rms: Voltage, e_j: Energy, e_c: Energy) -> Result<Frequency> {
    if !(0.0..1.0).contains(&beta) {
        return Err(Error::domain("beta", beta, "must lie in [0, 1)"));
    }
    non_negative("V_rms", v_rms.0)?;
    positive("E_j", e_j.0)?;
    positive("E_c", e_c.0)?;
    let omega = 2.0 * beta * CONSTANTS.elementary_charge * v_rms.0 / CONSTANTS.reduced_planck
        * (e_j.0 / (32.0 * e_c.0)).powf(0.25);
    Ok(Frequency((f64::from(n) + 1.0).sqrt() * omega / TAU))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DispersiveShifts {
    pub chi_01: Frequency,
    pub chi_12: Frequency,
    /// χ_01 - χ_12 / 2.
    pub chi_total: Frequency,
    #[serde(skip)]
    pub warnings: Vec<Warning>,
}

/// χ_01 = g²/(f_01 - f_r), χ_12 = 2g²/(f_12 - f_r), χ = χ_01 - χ_12/2.
pub fn dispersive_shift(
    g_01: Frequency,
    f_01: Frequency,
    f_12: Frequency,
    f_r: Frequency,
) -> Result<DispersiveShifts> {
    let delta_01 = f_01.0 - f_r.0;
    let delta_12 = f_12.0 - f_r.0;
    if delta_01 == 0.0 {
        return Err(Error::domain("f_01 - f_r", delta_01, "qubit degenerate with resonator"));
    }
    if delta_12 == 0.0 {
        return Err(Error::domain("f_12 - f_r", delta_12, "qubit 1-2 transition degenerate with resonator"));
    }
    let g2 = g_01.0 * g_01.0;
    let chi_01 = g2 / delta_01;
    let chi_12 = 2.0 * g2 / delta_12;

    let mut warnings = Vec::new();
    for (transition, delta) in [("0-1", delta_01), ("1-2", delta_12)] {
        if delta.abs() < DISPERSIVE_VALIDITY_RATIO * g_01.0.abs() {
            warnings.push(Warning::DispersiveValidity {
                transition,
                detuning_hz: delta,
                coupling_hz: g_01.0,
            });
        }
    }
    Ok(DispersiveShifts {
        chi_01: Frequency(chi_01),
        chi_12: Frequency(chi_12),
        chi_total: Frequency(chi_01 - chi_12 / 2.0),
        warnings,
    })
}

/// Parallel equivalent (R*, C*) of the series C_k - R_load branch at angular
/// frequency `omega`.
pub fn norton_equivalent(omega: f64, c_k: Capacitance, r_load: Resistance) -> (Resistance, Capacitance) {
    let x = omega * c_k.0 * r_load.0;
    let r_star = (1.0 + x * x) / (omega * omega * c_k.0 * c_k.0 * r_load.0);
    let c_star = c_k.0 / (1.0 + x * x);
    (Resistance(r_star), Capacitance(c_star))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExternalQ {
    pub q_ext: f64,
    /// Linewidth f_r_loaded / Q_ext.
    pub kappa: Frequency,
    pub f_r_loaded: Frequency,
    pub r_star: Resistance,
    pub c_star: Capacitance,
}

/// External quality factor of the LC resonator loaded through C_k by R_load,
/// evaluated self-consistently at the shifted resonance
/// ω* = 1/√(L_r (C_r + C*)).
pub fn external_quality_factor(
    c_r: Capacitance,
    l_r: Inductance,
    c_k: Capacitance,
    r_load: Resistance,
) -> Result<ExternalQ> {
    positive("C_r", c_r.0)?;
    positive("L_r", l_r.0)?;
    positive("C_k", c_k.0)?;
    positive("R_load", r_load.0)?;

    let mut omega = 1.0 / (l_r.0 * c_r.0).sqrt();
    let mut settled = false;
    for _ in 0..LOADED_FREQUENCY_MAX_ITER {
        let (_, c_star) = norton_equivalent(omega, c_k, r_load);
        let next = 1.0 / (l_r.0 * (c_r.0 + c_star.0)).sqrt();
        let change = ((next - omega) / omega).abs();
        omega = next;
        if change <= LOADED_FREQUENCY_TOLERANCE {
            settled = true;
            break;
        }
    }
    if !settled {
        return Err(Error::Convergence(
            "loaded resonator frequency did not settle".to_string(),
        ));
    }

    let (r_star, c_star) = norton_equivalent(omega, c_k, r_load);
    let q_ext = omega * r_star.0 * (c_r.0 + c_star.0);
    let f_r_loaded = Frequency::from_angular(omega);
    Ok(ExternalQ {
        q_ext,
        kappa: Frequency(f_r_loaded.0 / q_ext),
        f_r_loaded,
        r_star,
        c_star,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct T1Estimate {
    /// Infinite (serialized as null) when `unbounded`.
    pub seconds: f64,
    pub unbounded: bool,
}

/// T1 = (Δ_0 / g_01)² · Q / (2π f_r).
pub fn purcell_t1(detuning_0: Frequency, g_01: Frequency, q: f64, f_r: Frequency) -> Result<T1Estimate> {
    positive("f_r", f_r.0)?;
    positive("Q", q)?;
    non_negative("g_01", g_01.0)?;
    if g_01.0 == 0.0 {
        return Ok(T1Estimate {
            seconds: f64::INFINITY,
            unbounded: true,
        });
    }
    let ratio = detuning_0.0 / g_01.0;
    Ok(T1Estimate {
        seconds: ratio * ratio * q / to_angular(f_r),
        unbounded: false,
    })
}

/// Every coupling and readout figure derived from one lumped circuit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CouplingParameters {
    pub v_rms: Voltage,
    pub g_01: Frequency,
    pub g_12: Frequency,
    /// f_01 - f_r (signed).
    pub detuning_0: Frequency,
    pub chi_01: Frequency,
    pub chi_12: Frequency,
    pub chi_total: Frequency,
    pub q_ext: f64,
    pub kappa: Frequency,
    pub f_r_loaded: Frequency,
    pub t1_purcell: T1Estimate,
    /// 2|χ| / κ.
    pub chi_to_kappa_ratio: f64,
    /// |χ| > κ, the looser comparison.
    pub chi_exceeds_kappa: bool,
    /// 2|χ| > κ.
    pub readable: bool,
    #[serde(skip)]
    pub warnings: Vec<Warning>,
}

impl CouplingParameters {
    /// Eq. chain on the perturbative transmon levels and the bare resonator
    /// frequency.
    pub fn evaluate(lumped: &LumpedCircuit, transmon: &PerturbativeTransmon) -> Result<Self> {
        let f_r = lumped.inputs.f_r_target;
        let v_rms = zero_point_voltage(f_r, lumped.c_r)?;
        let g_01 = coupling_strength(0, lumped.beta, v_rms, lumped.e_j, lumped.e_c)?;
        let g_12 = coupling_strength(1, lumped.beta, v_rms, lumped.e_j, lumped.e_c)?;
        let shifts = dispersive_shift(g_01, transmon.f_01, transmon.f_12, f_r)?;
        let loading = external_quality_factor(lumped.c_r, lumped.l_r, lumped.inputs.c_k, lumped.inputs.r_load())?;
        let detuning_0 = Frequency(transmon.f_01.0 - f_r.0);
        let t1 = purcell_t1(detuning_0, g_01, loading.q_ext, f_r)?;

        let mut warnings = shifts.warnings.clone();
        if t1.unbounded {
            warnings.push(Warning::UnboundedT1);
        }
        let chi_abs = shifts.chi_total.0.abs();
        Ok(CouplingParameters {
            v_rms,
            g_01,
            g_12,
            detuning_0,
            chi_01: shifts.chi_01,
            chi_12: shifts.chi_12,
            chi_total: shifts.chi_total,
            q_ext: loading.q_ext,
            kappa: loading.kappa,
            f_r_loaded: loading.f_r_loaded,
            t1_purcell: t1,
            chi_to_kappa_ratio: 2.0 * chi_abs / loading.kappa.0,
            chi_exceeds_kappa: chi_abs > loading.kappa.0,
            readable: 2.0 * chi_abs > loading.kappa.0,
            warnings,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DressedLevel {
    pub qubit: usize,
    pub photons: usize,
    pub energy: Energy,
    /// Squared overlap with the bare product state |qubit, photons>.
    pub overlap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoupledSpectrum {
    pub qubit_levels_used: usize,
    pub resonator_levels_used: usize,
    /// Sorted by bare label (qubit, photons).
    pub dressed_energies: Vec<DressedLevel>,
    pub chi_exact: Frequency,
}

impl CoupledSpectrum {
    pub fn energy(&self, qubit: usize, photons: usize) -> Option<Energy> {
        self.dressed_energies
            .iter()
            .find(|l| l.qubit == qubit && l.photons == photons)
            .map(|l| l.energy)
    }
}

/// Diagonalizes the multilevel Jaynes-Cummings Hamiltonian
///
/// `H = Σ_j E_j |j><j| + f_r a†a + Σ_j g_{j,j+1} (|j><j+1| a† + h.c.)`,
/// with g_{j,j+1} = √(j+1) g_01, labels dressed states by their largest bare
/// overlap and returns χ = [(E(1,1) - E(1,0)) - (E(0,1) - E(0,0))] / 2.
pub fn coupled_spectrum_oracle(
    transmon: &TransmonSpectrum,
    f_r: Frequency,
    g_01: Frequency,
    n_qubit_levels: usize,
    n_resonator_levels: usize,
) -> Result<CoupledSpectrum> {
    if n_qubit_levels < 3 || n_resonator_levels < 4 {
        return Err(Error::Contract(format!(
            "need at least 3 qubit and 4 resonator levels, got {n_qubit_levels} and {n_resonator_levels}"
        )));
    }
    if n_qubit_levels > transmon.levels.len() {
        return Err(Error::Contract(format!(
            "requested {n_qubit_levels} qubit levels but the spectrum holds {}",
            transmon.levels.len()
        )));
    }
    positive("f_r", f_r.0)?;
    non_negative("g_01", g_01.0)?;

    let nr = n_resonator_levels;
    let dim = n_qubit_levels * nr;
    let index = |j: usize, m: usize| j * nr + m;

    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for j in 0..n_qubit_levels {
        for m in 0..nr {
            h[(index(j, m), index(j, m))] = transmon.levels[j].0 + m as f64 * f_r.0;
            if j + 1 < n_qubit_levels && m + 1 < nr {
                let g = g_01.0 * ((j + 1) as f64).sqrt() * ((m + 1) as f64).sqrt();
                let (a, b) = (index(j + 1, m), index(j, m + 1));
                h[(a, b)] = g;
                h[(b, a)] = g;
            }
        }
    }
    let eig = solve_dense_symmetric(&h)?;

    let label = |i: usize| (i / nr, i % nr);
    let mut by_label: BTreeMap<(usize, usize), DressedLevel> = BTreeMap::new();
    for k in 0..dim {
        let column = eig.eigenvectors.column(k);
        let (mut best, mut best_w) = (0, -1.0);
        let (mut runner_up, mut runner_w) = (0, -1.0);
        for (i, c) in column.iter().enumerate() {
            let w = c * c;
            if w > best_w {
                runner_up = best;
                runner_w = best_w;
                best = i;
                best_w = w;
            } else if w > runner_w {
                runner_up = i;
                runner_w = w;
            }
        }
        if best_w <= 0.5 {
            return Err(Error::Labeling(format!(
                "dressed state {k} mixes bare states {:?} and {:?} (overlaps {best_w:.3} and {runner_w:.3})",
                label(best),
                label(runner_up)
            )));
        }
        let (qubit, photons) = label(best);
        if let Some(previous) = by_label.get(&(qubit, photons)) {
            return Err(Error::Labeling(format!(
                "bare state ({qubit}, {photons}) claimed by dressed energies {:e} and {:e}",
                previous.energy.0, eig.eigenvalues[k]
            )));
        }
        by_label.insert(
            (qubit, photons),
            DressedLevel {
                qubit,
                photons,
                energy: Energy(eig.eigenvalues[k]),
                overlap: best_w,
            },
        );
    }

    let e = |j, m| by_label[&(j, m)].energy.0;
    let chi_exact = ((e(1, 1) - e(1, 0)) - (e(0, 1) - e(0, 0))) / 2.0;
    Ok(CoupledSpectrum {
        qubit_levels_used: n_qubit_levels,
        resonator_levels_used: nr,
        dressed_energies: by_label.into_values().collect(),
        chi_exact: Frequency(chi_exact),
    })
}
