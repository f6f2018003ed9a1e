//! Transmon energy levels: closed-form perturbative estimates and exact
//! diagonalization of the charge-basis Hamiltonian
//! `H = 4 E_c (n - n_g)² - E_j cos φ`.

use serde::Serialize;

use crate::eigen::solve_tridiagonal_symmetric;
use crate::error::{positive, Error, Result, Warning};
use crate::units::{Energy, Frequency};

/// Default charge-basis cutoff: states n ∈ [-25, 25].
pub const DEFAULT_TRUNCATION: usize = 25;
/// Smallest cutoff accepted by [`exact_transmon_spectrum`].
pub const MIN_TRUNCATION: usize = 10;
/// Extra charge states used for the convergence re-solve.
pub const CONVERGENCE_STEP: usize = 5;
/// Allowed relative drift of the checked levels between N and N + 5.
pub const CONVERGENCE_TOLERANCE: f64 = 1e-9;
const CHECKED_LEVELS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerturbativeTransmon {
    pub f_01: Frequency,
    pub f_12: Frequency,
    /// f_12 - f_01, equal to -E_c at this order.
    pub anharmonicity: Frequency,
    pub e_j: Energy,
    pub e_c: Energy,
}

/// f_01 = √(8 E_j E_c) - E_c, f_12 = f_01 - E_c.
pub fn perturbative_levels(e_j: Energy, e_c: Energy) -> Result<PerturbativeTransmon> {
    positive("E_j", e_j.0)?;
    positive("E_c", e_c.0)?;
    let f_01 = (8.0 * e_j.0 * e_c.0).sqrt() - e_c.0;
    Ok(PerturbativeTransmon {
        f_01: Frequency(f_01),
        f_12: Frequency(f_01 - e_c.0),
        anharmonicity: Frequency(-e_c.0),
        e_j,
        e_c,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransmonSpectrum {
    /// Ascending, referenced to the ground state (`levels[0] == 0`).
    pub levels: Vec<Energy>,
    pub n_g: f64,
    pub truncation: usize,
    pub f_01_exact: Frequency,
    /// E_2 - 2 E_1, negative for a transmon.
    pub anharmonicity_exact: Frequency,
    /// Largest relative change of levels 1..5 when the cutoff grows by 5.
    pub max_relative_change: f64,
    pub converged: bool,
}

impl TransmonSpectrum {
    pub fn level(&self, index: usize) -> Option<Energy> {
        self.levels.get(index).copied()
    }

    pub fn warning(&self) -> Option<Warning> {
        (!self.converged).then_some(Warning::TruncationNotConverged {
            truncation: self.truncation,
            max_relative_change: self.max_relative_change,
        })
    }
}

/// Diagonal and off-diagonal of the charge-basis Hamiltonian for n ∈ [-N, N].
pub fn charge_hamiltonian(e_j: Energy, e_c: Energy, n_g: f64, truncation: usize) -> (Vec<f64>, Vec<f64>) {
    let n = truncation as i64;
    let diagonal = (-n..=n)
        .map(|q| {
            let x = q as f64 - n_g;
            4.0 * e_c.0 * x * x
        })
        .collect();
    let offdiagonal = vec![-0.5 * e_j.0; 2 * truncation];
    (diagonal, offdiagonal)
}

fn ground_referenced_levels(e_j: Energy, e_c: Energy, n_g: f64, truncation: usize) -> Result<Vec<f64>> {
    let (d, e) = charge_hamiltonian(e_j, e_c, n_g, truncation);
    let eig = solve_tridiagonal_symmetric(&d, &e)?;
    let ground = eig.eigenvalues[0];
    Ok(eig.eigenvalues.iter().map(|x| x - ground).collect())
}

pub fn exact_transmon_spectrum(
    e_j: Energy,
    e_c: Energy,
    n_g: f64,
    truncation: usize,
) -> Result<TransmonSpectrum> {
    positive("E_j", e_j.0)?;
    positive("E_c", e_c.0)?;
    if !n_g.is_finite() {
        return Err(Error::domain("n_g", n_g, "must be finite"));
    }
    if truncation < MIN_TRUNCATION {
        return Err(Error::Contract(format!(
            "charge-basis truncation {truncation} is below the minimum {MIN_TRUNCATION}"
        )));
    }

    let levels = ground_referenced_levels(e_j, e_c, n_g, truncation)?;
    let wider = ground_referenced_levels(e_j, e_c, n_g, truncation + CONVERGENCE_STEP)?;
    let max_relative_change = (1..CHECKED_LEVELS.min(levels.len()))
        .map(|k| ((levels[k] - wider[k]) / wider[k]).abs())
        .fold(0.0, f64::max);

    Ok(TransmonSpectrum {
        f_01_exact: Frequency(levels[1]),
        anharmonicity_exact: Frequency(levels[2] - 2.0 * levels[1]),
        levels: levels.into_iter().map(Energy).collect(),
        n_g,
        truncation,
        max_relative_change,
        converged: max_relative_change <= CONVERGENCE_TOLERANCE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    const E_J: Energy = Energy(14.86e9);
    const E_C: Energy = Energy(188.8e6);

    #[test]
    fn perturbative_reference() {
        let t = perturbative_levels(E_J, E_C).unwrap();
        assert!(rel(t.f_01.0, 4.55e9) < 0.002, "{}", t.f_01);
        assert_eq!(t.anharmonicity.0, -E_C.0);
        assert_eq!(t.f_12.0 - t.f_01.0, -E_C.0);

        // 8 E_j E_c = 1 GHz², E_c = 0.1 GHz
        let t = perturbative_levels(Energy(1.25e9), Energy(0.1e9)).unwrap();
        assert!(rel(t.f_01.0, 0.9e9) < 1e-14);

        assert!(perturbative_levels(Energy(0.0), E_C).is_err());
        assert!(perturbative_levels(E_J, Energy(-1.0)).is_err());
    }

    #[test]
    fn exact_reference_spectrum() {
        let s = exact_transmon_spectrum(E_J, E_C, 0.0, 20).unwrap();
        assert!(s.converged, "max change {}", s.max_relative_change);
        assert_eq!(s.levels[0].0, 0.0);
        assert!(s.levels.windows(2).take(6).all(|w| w[0].0 < w[1].0));
        assert!(rel(s.f_01_exact.0, 4.55e9) < 0.015);
        // Frozen from an independent numpy.linalg.eigh diagonalization of the
        // same 41x41 charge matrix.
        assert!(rel(s.f_01_exact.0, 4_540_317_855.572_72) < 1e-10, "{}", s.f_01_exact);
        assert!(rel(s.anharmonicity_exact.0, -209_693_553.347_33) < 1e-8, "{}", s.anharmonicity_exact);
        assert!(s.anharmonicity_exact.0 < -E_C.0);
    }

    #[test]
    fn harmonic_limit() {
        let e_c = Energy(1e6);
        let e_j = Energy(1e10);
        let s = exact_transmon_spectrum(e_j, e_c, 0.0, 40).unwrap();
        let plasma = (8.0 * e_j.0 * e_c.0).sqrt();
        for m in 1..=3 {
            assert!(rel(s.levels[m].0, m as f64 * plasma) < 0.01);
        }
    }

    #[test]
    fn offset_charge_parity() {
        let a = exact_transmon_spectrum(E_J, E_C, 0.5, 20).unwrap();
        let b = exact_transmon_spectrum(E_J, E_C, -0.5, 20).unwrap();
        for k in 1..10 {
            assert!(rel(a.levels[k].0, b.levels[k].0) < 1e-9);
        }
    }

    #[test]
    fn small_truncation_is_a_contract_error() {
        assert!(matches!(
            exact_transmon_spectrum(E_J, E_C, 0.0, 9),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn unconverged_truncation_warns() {
        // Deep transmon with a cutoff that is too small for the ground-state width.
        let s = exact_transmon_spectrum(Energy(1e11), Energy(1e6), 0.0, 10).unwrap();
        assert!(!s.converged);
        assert!(matches!(s.warning(), Some(Warning::TruncationNotConverged { .. })));
    }

    #[test]
    fn charge_dispersion_is_suppressed() {
        let e_c = Energy(188.8e6);
        let e_j = Energy(79.0 * e_c.0);
        let f: Vec<f64> = [0.0, 0.25, 0.5]
            .iter()
            .map(|&ng| exact_transmon_spectrum(e_j, e_c, ng, 25).unwrap().f_01_exact.0)
            .collect();
        let spread = f.iter().cloned().fold(f64::MIN, f64::max) - f.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread / f[0] < 1e-4);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn perturbative_close_to_exact(ratio in 50.0f64..200.0, e_c in 0.1e9f64..0.4e9) {
            let e_c = Energy(e_c);
            let e_j = Energy(ratio * e_c.0);
            let exact = exact_transmon_spectrum(e_j, e_c, 0.0, DEFAULT_TRUNCATION).unwrap();
            let pert = perturbative_levels(e_j, e_c).unwrap();
            prop_assert!(rel(pert.f_01.0, exact.f_01_exact.0) < 0.02);
            prop_assert!(exact.anharmonicity_exact.0 < 0.0);
            prop_assert!(exact.anharmonicity_exact.0.abs() >= e_c.0);
        }

        #[test]
        fn offset_charge_symmetries(ng in -1.0f64..1.0) {
            let base = exact_transmon_spectrum(E_J, E_C, ng, 20).unwrap();
            let shifted = exact_transmon_spectrum(E_J, E_C, ng + 1.0, 20).unwrap();
            let mirrored = exact_transmon_spectrum(E_J, E_C, -ng, 20).unwrap();
            for k in 1..6 {
                prop_assert!(rel(shifted.levels[k].0, base.levels[k].0) < 1e-6);
                prop_assert!(rel(mirrored.levels[k].0, base.levels[k].0) < 1e-6);
            }
        }
    }
}
