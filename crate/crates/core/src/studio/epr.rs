use serde::Serialize;

use crate::units::Frequency;

use super::pipeline::DerivedParameters;

/// Allowed deviation from the published gap, in percentage points.
pub const GAP_TOLERANCE_PP: f64 = 0.3;

/// Published electromagnetic (energy-participation) simulation results for
/// the reference chip.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EprReference {
    pub f_01_epr: Frequency,
    pub f_r_epr: Frequency,
    pub alpha_epr: Frequency,
    pub chi_epr: Frequency,
}

impl EprReference {
    pub const PUBLISHED: EprReference = EprReference {
        f_01_epr: Frequency(4.43e9),
        f_r_epr: Frequency(5.17e9),
        alpha_epr: Frequency(-193.43e6),
        chi_epr: Frequency(-1.37e6),
    };

    /// Percent gaps quoted alongside the simulation results, in the order
    /// f_01, f_r, anharmonicity, χ.
    pub const PUBLISHED_GAPS_PERCENT: [f64; 4] = [2.6, 3.2, 2.5, 4.9];
}

/// Analytic counterparts of the reference values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalyticValues {
    pub f_01: Frequency,
    pub f_r: Frequency,
    /// E_c, compared with |α_EPR|.
    pub anharmonicity_magnitude: Frequency,
    pub chi: Frequency,
}

impl From<&DerivedParameters> for AnalyticValues {
    fn from(d: &DerivedParameters) -> Self {
        AnalyticValues {
            f_01: d.transmon_perturbative.f_01,
            f_r: d.lumped.inputs.f_r_target,
            anharmonicity_magnitude: d.lumped.e_c.as_frequency(),
            chi: d.coupling.chi_total,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapRow {
    pub quantity: &'static str,
    pub analytic: f64,
    pub reference: f64,
    /// |analytic - reference| / |analytic| · 100.
    pub gap_percent: f64,
    pub published_gap_percent: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EprComparison {
    pub rows: Vec<GapRow>,
    pub all_pass: bool,
}

impl EprComparison {
    /// Fixed-width text table.
    pub fn table(&self) -> String {
        let mut out = format!(
            "{:<14} {:>16} {:>16} {:>9} {:>11} {:>6}\n",
            "quantity", "analytic_hz", "reference_hz", "gap_%", "published_%", "status"
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{:<14} {:>16.9e} {:>16.9e} {:>9.3} {:>11.1} {:>6}\n",
                r.quantity,
                r.analytic,
                r.reference,
                r.gap_percent,
                r.published_gap_percent,
                if r.pass { "PASS" } else { "FAIL" }
            ));
        }
        out
    }
}

pub fn compare_values(analytic: &AnalyticValues, reference: &EprReference) -> EprComparison {
    let pairs = [
        ("f_01", analytic.f_01.0, reference.f_01_epr.0),
        ("f_r", analytic.f_r.0, reference.f_r_epr.0),
        ("anharmonicity", analytic.anharmonicity_magnitude.0, reference.alpha_epr.0.abs()),
        ("chi", analytic.chi.0, reference.chi_epr.0),
    ];
    let rows: Vec<GapRow> = pairs
        .into_iter()
        .zip(EprReference::PUBLISHED_GAPS_PERCENT)
        .map(|((quantity, a, r), published)| {
            let gap_percent = if a == r { 0.0 } else { (a - r).abs() / a.abs() * 100.0 };
            GapRow {
                quantity,
                analytic: a,
                reference: r,
                gap_percent,
                published_gap_percent: published,
                pass: (gap_percent - published).abs() <= GAP_TOLERANCE_PP,
            }
        })
        .collect();
    EprComparison {
        all_pass: rows.iter().all(|r| r.pass),
        rows,
    }
}

pub fn compare_to_epr(derived: &DerivedParameters, reference: &EprReference) -> EprComparison {
    compare_values(&AnalyticValues::from(derived), reference)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::studio::{derive, reference_design};

    #[test]
    fn identical_values_have_no_gap() {
        let r = EprReference::PUBLISHED;
        let analytic = AnalyticValues {
            f_01: r.f_01_epr,
            f_r: r.f_r_epr,
            anharmonicity_magnitude: Frequency(r.alpha_epr.0.abs()),
            chi: r.chi_epr,
        };
        let cmp = compare_values(&analytic, &r);
        assert!(cmp.rows.iter().all(|row| row.gap_percent == 0.0));
    }

    #[test]
    fn anharmonicity_gap_uses_charging_energy() {
        let d = derive(&reference_design()).unwrap();
        let cmp = compare_to_epr(&d, &EprReference::PUBLISHED);
        let row = &cmp.rows[2];
        assert_eq!(row.analytic, d.lumped.e_c.0);
        assert!((row.gap_percent - 2.5).abs() <= GAP_TOLERANCE_PP);
    }

    #[test]
    fn table_has_one_line_per_quantity() {
        let d = derive(&reference_design()).unwrap();
        let table = compare_to_epr(&d, &EprReference::PUBLISHED).table();
        assert_eq!(table.lines().count(), 5);
    }
}
