//! Lumped-element equivalent of the qubit/resonator/feedline circuit.
//!
//! The resonator becomes a parallel LC (`C_r`, `L_r`), the qubit a junction
//! shunted by `C_s`, coupled to the resonator through `C_g`. The resonator
//! couples to the feedline through `C_k`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{non_negative, positive, Result};
use crate::units::{
    junction_inductance_to_critical_current, junction_inductance_to_ej, to_angular, Capacitance,
    Current, Energy, Frequency, Inductance, Resistance, CONSTANTS,
};

/// E_j/E_c above which the design counts as a transmon.
pub const TRANSMON_REGIME_RATIO: f64 = 50.0;

/// Circuit and junction inputs of one design, as read from a design file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignInputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Qubit shunt capacitance.
    #[serde(rename = "c_s_farad")]
    pub c_s: Capacitance,
    /// Qubit-resonator coupling capacitance.
    #[serde(rename = "c_g_farad")]
    pub c_g: Capacitance,
    /// Resonator-feedline coupling capacitance.
    #[serde(rename = "c_k_farad")]
    pub c_k: Capacitance,
    /// Josephson junction inductance.
    #[serde(rename = "l_j_henry")]
    pub l_j: Inductance,
    /// Design resonator frequency ω_r/2π.
    #[serde(rename = "f_r_target_hertz")]
    pub f_r_target: Frequency,
    /// Characteristic impedance of the resonator line.
    #[serde(rename = "z_0_ohm")]
    pub z_0: Resistance,
    /// Feedline termination seen by the coupler; falls back to `z_0`.
    #[serde(
        rename = "r_load_ohm",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub r_load: Option<Resistance>,
    /// Layout metadata, carried through untouched.
    #[serde(default)]
    pub geometry: Map<String, Value>,
}

impl DesignInputs {
    pub fn r_load(&self) -> Resistance {
        self.r_load.unwrap_or(self.z_0)
    }

    pub fn validate(&self) -> Result<()> {
        positive("C_s", self.c_s.0)?;
        non_negative("C_g", self.c_g.0)?;
        positive("C_k", self.c_k.0)?;
        positive("L_j", self.l_j.0)?;
        positive("f_r_target", self.f_r_target.0)?;
        positive("Z_0", self.z_0.0)?;
        positive("R_load", self.r_load().0)?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LumpedCircuit {
    pub c_r: Capacitance,
    pub l_r: Inductance,
    /// Total qubit capacitance C_s + C_g.
    pub c_sigma: Capacitance,
    pub e_c: Energy,
    pub e_j: Energy,
    pub i_c: Current,
    /// C_g / (C_g + C_s).
    pub beta: f64,
    pub ej_over_ec: f64,
    pub transmon_regime: bool,
    pub inputs: DesignInputs,
}

/// Lumped LC equivalent of a quarter-wave line resonator near resonance:
/// C_r = π / (4 ω_r Z_0), L_r = 1 / (C_r ω_r²).
pub fn quarter_wave_equivalents(
    f_r: Frequency,
    z_0: Resistance,
) -> Result<(Capacitance, Inductance)> {
    positive("f_r", f_r.0)?;
    positive("Z_0", z_0.0)?;
    let omega = to_angular(f_r);
    let c_r = PI / (4.0 * omega * z_0.0);
    let l_r = 1.0 / (c_r * omega * omega);
    Ok((Capacitance(c_r), Inductance(l_r)))
}

/// E_c / h = e² / (2 C_Σ h) with C_Σ = C_s + C_g.
pub fn charging_energy(c_s: Capacitance, c_g: Capacitance) -> Result<Energy> {
    positive("C_s", c_s.0)?;
    non_negative("C_g", c_g.0)?;
    let e = CONSTANTS.elementary_charge;
    Ok(Energy(e * e / (2.0 * (c_s.0 + c_g.0) * CONSTANTS.planck)))
}

pub fn build_lumped_circuit(inputs: &DesignInputs) -> Result<LumpedCircuit> {
    inputs.validate()?;
    let (c_r, l_r) = quarter_wave_equivalents(inputs.f_r_target, inputs.z_0)?;
    let e_c = charging_energy(inputs.c_s, inputs.c_g)?;
    let e_j = junction_inductance_to_ej(inputs.l_j)?;
    let i_c = junction_inductance_to_critical_current(inputs.l_j)?;
    let c_sigma = inputs.c_s.0 + inputs.c_g.0;
    let ej_over_ec = e_j.0 / e_c.0;
    Ok(LumpedCircuit {
        c_r,
        l_r,
        c_sigma: Capacitance(c_sigma),
        e_c,
        e_j,
        i_c,
        beta: inputs.c_g.0 / c_sigma,
        ej_over_ec,
        transmon_regime: ej_over_ec > TRANSMON_REGIME_RATIO,
        inputs: inputs.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use proptest::prelude::*;
    use std::f64::consts::TAU;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn paper_like() -> DesignInputs {
        DesignInputs {
            name: None,
            c_s: Capacitance(98.19e-15),
            c_g: Capacitance(4.40e-15),
            c_k: Capacitance(8.62e-15),
            l_j: Inductance(11e-9),
            f_r_target: Frequency::from_ghz(5.01),
            z_0: Resistance(50.0),
            r_load: None,
            geometry: Map::new(),
        }
    }

    #[test]
    fn quarter_wave_reference_values() {
        let (c_r, l_r) =
            quarter_wave_equivalents(Frequency::from_ghz(5.01), Resistance(50.0)).unwrap();
        assert!(rel(c_r.0, 499e-15) < 0.01);
        assert!(rel(l_r.0, 2.03e-9) < 0.01);

        let f = 1.0 / (TAU * (l_r.0 * c_r.0).sqrt());
        assert!(rel(f, 5.01e9) < 1e-12);

        let (c_half, _) =
            quarter_wave_equivalents(Frequency::from_ghz(2.505), Resistance(50.0)).unwrap();
        assert!(rel(c_half.0, 2.0 * c_r.0) < 1e-12);
    }

    #[test]
    fn quarter_wave_rejects_bad_inputs() {
        assert!(quarter_wave_equivalents(Frequency(0.0), Resistance(50.0)).is_err());
        assert!(quarter_wave_equivalents(Frequency(5e9), Resistance(-50.0)).is_err());
    }

    #[test]
    fn charging_energy_reference_values() {
        let e_c = charging_energy(Capacitance(98.19e-15), Capacitance(4.40e-15)).unwrap();
        assert!(rel(e_c.0, 188.80e6) < 0.005, "{}", e_c);

        let e = CONSTANTS.elementary_charge;
        let c_one_ghz = e * e / (2.0 * CONSTANTS.planck * 1e9);
        let one = charging_energy(Capacitance(c_one_ghz), Capacitance(0.0)).unwrap();
        assert!(rel(one.0, 1e9) < 1e-14);

        let half = charging_energy(Capacitance(196.38e-15), Capacitance(8.80e-15)).unwrap();
        assert!(rel(half.0, e_c.0 / 2.0) < 1e-14);
        assert!(rel(half.0, 94.4e6) < 0.005);

        assert!(charging_energy(Capacitance(0.0), Capacitance(1e-15)).is_err());
    }

    #[test]
    fn reference_circuit() {
        let lc = build_lumped_circuit(&paper_like()).unwrap();
        assert!(rel(lc.c_r.0, 499e-15) < 0.01);
        assert!(rel(lc.l_r.0, 2.03e-9) < 0.01);
        assert!(rel(lc.e_c.0, 188.8e6) < 0.005);
        assert!(rel(lc.e_j.0, 14.86e9) < 0.001);
        assert!(rel(lc.beta, 0.0429) < 0.005);
        assert!((78.0..=80.0).contains(&lc.ej_over_ec));
        assert!(lc.transmon_regime);
    }

    #[test]
    fn beta_limits() {
        let mut inputs = paper_like();
        inputs.c_g = Capacitance(0.0);
        assert_eq!(build_lumped_circuit(&inputs).unwrap().beta, 0.0);
        inputs.c_g = inputs.c_s;
        assert_eq!(build_lumped_circuit(&inputs).unwrap().beta, 0.5);
    }

    #[test]
    fn errors_name_the_field() {
        let mut inputs = paper_like();
        inputs.c_k = Capacitance(-1e-15);
        match build_lumped_circuit(&inputs) {
            Err(Error::Domain { field, .. }) => assert_eq!(field, "C_k"),
            other => panic!("unexpected {other:?}"),
        }
        let mut inputs = paper_like();
        inputs.r_load = Some(Resistance(0.0));
        match build_lumped_circuit(&inputs) {
            Err(Error::Domain { field, .. }) => assert_eq!(field, "R_load"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn r_load_defaults_to_line_impedance() {
        let inputs = paper_like();
        assert_eq!(inputs.r_load(), Resistance(50.0));
    }

    proptest! {
        #[test]
        fn quarter_wave_round_trip(f in 1e8f64..5e10, z in 5.0f64..200.0) {
            let (c, l) = quarter_wave_equivalents(Frequency(f), Resistance(z)).unwrap();
            let back = 1.0 / (TAU * (l.0 * c.0).sqrt());
            prop_assert!(rel(back, f) < 1e-9);
        }

        #[test]
        fn charging_energy_and_beta_are_monotone(
            c_s in 10e-15f64..500e-15,
            c_g in 0.1e-15f64..50e-15,
            bump in 1.001f64..3.0,
        ) {
            let base = charging_energy(Capacitance(c_s), Capacitance(c_g)).unwrap();
            let more_s = charging_energy(Capacitance(c_s * bump), Capacitance(c_g)).unwrap();
            let more_g = charging_energy(Capacitance(c_s), Capacitance(c_g * bump)).unwrap();
            prop_assert!(more_s.0 < base.0);
            prop_assert!(more_g.0 < base.0);

            let beta = |g: f64| g / (g + c_s);
            prop_assert!(beta(c_g * bump) > beta(c_g));
        }
    }
}
