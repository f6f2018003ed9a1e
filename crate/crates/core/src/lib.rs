//! Design and verification toolkit for a transmon qubit capacitively coupled
//! to a quarter-wave readout resonator and a through feedline.
//!
//! The derivation chain runs bottom-up:
//!
//! * [`units`]: physical constants and unit-carrying quantity types.
//! * [`lumped`]: quarter-wave lumped equivalents, charging and Josephson energies.
//! * [`transmon`]: perturbative transmon levels and the exact charge-basis spectrum.
//! * [`eigen`]: symmetric eigensolvers backing the exact-diagonalization oracles.
//! * [`coupling`]: coupling strength, dispersive shifts, external Q, Purcell T1,
//!   and the dressed-state oracle for the dispersive shift.
//! * [`readout`]: notch-type feedline transmission for both qubit states.
//! * [`studio`]: design files, the full pipeline, sweeps, tuning, reference
//!   comparison and reports.

pub mod coupling;
pub mod eigen;
pub mod error;
pub mod lumped;
pub mod readout;
pub mod studio;
pub mod transmon;
pub mod units;

pub use error::{Error, Result, Warning};
