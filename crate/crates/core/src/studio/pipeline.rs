use serde::Serialize;

use crate::coupling::{coupled_spectrum_oracle, CoupledSpectrum, CouplingParameters};
use crate::error::{Error, Result, Warning};
use crate::lumped::{build_lumped_circuit, DesignInputs, LumpedCircuit};
use crate::transmon::{exact_transmon_spectrum, perturbative_levels, PerturbativeTransmon, TransmonSpectrum, DEFAULT_TRUNCATION};
use crate::units::Frequency;

use super::design::input_digest;

pub const ORACLE_QUBIT_LEVELS: usize = 4;
pub const ORACLE_RESONATOR_LEVELS: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub input_sha256: String,
}

/// Everything one pipeline run derives from a single design.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivedParameters {
    pub provenance: Provenance,
    pub lumped: LumpedCircuit,
    pub transmon_perturbative: PerturbativeTransmon,
    pub transmon_exact: TransmonSpectrum,
    pub coupling: CouplingParameters,
    /// `None` when dressed states cannot be labeled (e.g. qubit on resonance).
    pub coupled_spectrum: Option<CoupledSpectrum>,
    pub chi_exact: Option<Frequency>,
    pub warnings: Vec<Warning>,
}

/// lumped circuit → transmon levels (both routes) → coupling formulas and
/// dressed-state oracle.
pub fn derive(inputs: &DesignInputs) -> Result<DerivedParameters> {
    let lumped = build_lumped_circuit(inputs).map_err(|e| e.in_stage("lumped extraction"))?;
    let transmon_perturbative =
        perturbative_levels(lumped.e_j, lumped.e_c).map_err(|e| e.in_stage("transmon spectrum"))?;
    let transmon_exact = exact_transmon_spectrum(lumped.e_j, lumped.e_c, 0.0, DEFAULT_TRUNCATION)
        .map_err(|e| e.in_stage("transmon spectrum"))?;
    let coupling = CouplingParameters::evaluate(&lumped, &transmon_perturbative)
        .map_err(|e| e.in_stage("coupling"))?;

    let mut warnings = Vec::new();
    warnings.extend(transmon_exact.warning());
    warnings.extend(coupling.warnings.iter().cloned());

    let coupled_spectrum = match coupled_spectrum_oracle(
        &transmon_exact,
        inputs.f_r_target,
        coupling.g_01,
        ORACLE_QUBIT_LEVELS,
        ORACLE_RESONATOR_LEVELS,
    ) {
        Ok(spectrum) => Some(spectrum),
        Err(Error::Labeling(reason)) => {
            warnings.push(Warning::OracleUnavailable { reason });
            None
        }
        Err(e) => return Err(e.in_stage("dressed-state oracle")),
    };

    Ok(DerivedParameters {
        provenance: Provenance {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            input_sha256: input_digest(inputs),
        },
        chi_exact: coupled_spectrum.as_ref().map(|s| s.chi_exact),
        lumped,
        transmon_perturbative,
        transmon_exact,
        coupling,
        coupled_spectrum,
        warnings,
    })
}
