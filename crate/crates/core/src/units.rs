//! Physical constants and unit-carrying quantities.
//!
//! Frequencies and energies are always stored as *linear* frequency in hertz
//! (ω/2π, or E/h). Angular values only appear inside formulas that need them.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{positive, Result};

/// CODATA-2018 constants (SI).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Coulomb.
    pub elementary_charge: f64,
    /// Joule-second.
    pub planck: f64,
    /// Joule-second.
    pub reduced_planck: f64,
    /// Weber.
    pub flux_quantum: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: PhysicalConstants = {
        let elementary_charge = 1.602_176_634e-19;
        let planck = 6.626_070_15e-34;
        PhysicalConstants {
            elementary_charge,
            planck,
            reduced_planck: planck / TAU,
            flux_quantum: planck / (2.0 * elementary_charge),
        }
    };

    /// Φ0 / 2π, the reduced flux quantum.
    pub fn reduced_flux_quantum(&self) -> f64 {
        self.flux_quantum / TAU
    }
}

/// Shorthand for the constants every formula uses.
pub const CONSTANTS: PhysicalConstants = PhysicalConstants::CODATA_2018;

macro_rules! quantity {
    ($(#[$meta:meta])* $name:ident, $unit:literal) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub f64);

        impl $name {
            pub const UNIT: &'static str = $unit;

            pub const fn new(value: f64) -> Self {
                Self(value)
            }

            pub const fn value(self) -> f64 {
                self.0
            }
        }

        impl std::fmt::Display for $name {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                write!(f, "{} {}", self.0, $unit)
            }
        }
    };
}

quantity!(
    /// Linear frequency in hertz. Signed when it represents a detuning or shift.
    Frequency,
    "Hz"
);
quantity!(
    /// Energy divided by the Planck constant, in hertz.
    Energy,
    "Hz"
);
quantity!(Capacitance, "F");
quantity!(Inductance, "H");
quantity!(Current, "A");
quantity!(Voltage, "V");
quantity!(Resistance, "Ohm");

impl Frequency {
    pub fn from_ghz(ghz: f64) -> Self {
        Self(ghz * 1e9)
    }

    pub fn from_mhz(mhz: f64) -> Self {
        Self(mhz * 1e6)
    }

    /// Angular frequency in rad/s.
    pub fn to_angular(self) -> f64 {
        to_angular(self)
    }

    pub fn from_angular(omega: f64) -> Self {
        Self(omega / TAU)
    }
}

impl Energy {
    /// The same energy read as a transition frequency.
    pub fn as_frequency(self) -> Frequency {
        Frequency(self.0)
    }

    /// Energy in joules.
    pub fn joules(self) -> f64 {
        self.0 * CONSTANTS.planck
    }
}

/// 2π·f in rad/s.
pub fn to_angular(f: Frequency) -> f64 {
    TAU * f.0
}

/// I_c = Φ0 / (2π L_j).
pub fn junction_inductance_to_critical_current(l_j: Inductance) -> Result<Current> {
    let l = positive("L_j", l_j.0)?;
    Ok(Current(CONSTANTS.reduced_flux_quantum() / l))
}

/// L_j = Φ0 / (2π I_c).
pub fn critical_current_to_junction_inductance(i_c: Current) -> Result<Inductance> {
    let i = positive("I_c", i_c.0)?;
    Ok(Inductance(CONSTANTS.reduced_flux_quantum() / i))
}

/// E_j / h = (Φ0/2π)² / (L_j h).
pub fn junction_inductance_to_ej(l_j: Inductance) -> Result<Energy> {
    let l = positive("L_j", l_j.0)?;
    let phi = CONSTANTS.reduced_flux_quantum();
    Ok(Energy(phi * phi / (l * CONSTANTS.planck)))
}

/// Inverse of [`junction_inductance_to_ej`].
pub fn ej_to_junction_inductance(e_j: Energy) -> Result<Inductance> {
    let e = positive("E_j", e_j.0)?;
    let phi = CONSTANTS.reduced_flux_quantum();
    Ok(Inductance(phi * phi / (e * CONSTANTS.planck)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn constants_are_consistent() {
        let c = CONSTANTS;
        assert!(rel(c.reduced_planck, c.planck / TAU) < 1e-15);
        assert!(rel(c.flux_quantum, c.planck / (2.0 * c.elementary_charge)) < 1e-15);
        assert!(rel(c.flux_quantum, 2.067_833_848e-15) < 1e-9);
    }

    #[test]
    fn angular_conversion() {
        assert!(rel(to_angular(Frequency::from_ghz(5.01)), 3.1478e10) < 1e-4);
        assert_eq!(to_angular(Frequency(0.0)), 0.0);
        assert!(rel(to_angular(Frequency(1.0 / TAU)), 1.0) < 1e-15);
    }

    #[test]
    fn critical_current_of_reference_junction() {
        let i_c = junction_inductance_to_critical_current(Inductance(11e-9)).unwrap();
        assert!(rel(i_c.0, 29.92e-9) < 1e-3, "{}", i_c);

        let unit = junction_inductance_to_critical_current(Inductance(
            CONSTANTS.reduced_flux_quantum(),
        ))
        .unwrap();
        assert!(rel(unit.0, 1.0) < 1e-15);

        // Direct constant evaluation: h / (2e) / (2π · 22 nH).
        let direct = 6.626_070_15e-34 / (2.0 * 1.602_176_634e-19) / (TAU * 22e-9);
        let halved = junction_inductance_to_critical_current(Inductance(22e-9)).unwrap();
        assert!(rel(halved.0, direct) < 1e-14);
        assert!(rel(halved.0, 14.96e-9) < 1e-3);
    }

    #[test]
    fn josephson_energy_of_reference_junction() {
        let ej = junction_inductance_to_ej(Inductance(11e-9)).unwrap();
        assert!(rel(ej.0, 14.86e9) < 1e-3, "{}", ej);
        let half = junction_inductance_to_ej(Inductance(22e-9)).unwrap();
        assert!(rel(half.0, 7.43e9) < 1e-3);

        let phi = 6.626_070_15e-34 / (2.0 * 1.602_176_634e-19) / TAU;
        let direct = phi * phi / (5.5e-9 * 6.626_070_15e-34);
        let doubled = junction_inductance_to_ej(Inductance(5.5e-9)).unwrap();
        assert!(rel(doubled.0, direct) < 1e-14);
        assert!(rel(doubled.0, 29.72e9) < 1e-3);
    }

    #[test]
    fn non_positive_inductance_is_rejected() {
        assert!(junction_inductance_to_critical_current(Inductance(0.0)).is_err());
        assert!(junction_inductance_to_ej(Inductance(-1e-9)).is_err());
        assert!(junction_inductance_to_ej(Inductance(f64::NAN)).is_err());
    }

    proptest! {
        #[test]
        fn angular_round_trip(f in 0.0f64..1e12) {
            let back = Frequency::from_angular(to_angular(Frequency(f)));
            prop_assert!((back.0 - f).abs() <= 1e-12 * f.max(1.0));
        }

        #[test]
        fn junction_round_trips(l in 1e-10f64..1e-6) {
            let i_c = junction_inductance_to_critical_current(Inductance(l)).unwrap();
            let back = critical_current_to_junction_inductance(i_c).unwrap();
            prop_assert!(rel(back.0, l) < 1e-12);

            let ej = junction_inductance_to_ej(Inductance(l)).unwrap();
            let back = ej_to_junction_inductance(ej).unwrap();
            prop_assert!(rel(back.0, l) < 1e-12);

            // E_j h = Φ0 I_c / 2π
            let lhs = ej.0 * CONSTANTS.planck;
            let rhs = CONSTANTS.flux_quantum * i_c.0 / TAU;
            prop_assert!(rel(lhs, rhs) < 1e-12);
        }
    }
}
