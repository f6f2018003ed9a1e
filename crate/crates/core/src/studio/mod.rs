//! Orchestration: design files, the full derivation pipeline, reference
//! comparison, sweeps, tuning and reports.

mod design;
mod epr;
mod pipeline;
mod quantity;
mod report;
mod sweep;
mod tune;

pub use design::{input_digest, load_design, parse_design, reference_design, REFERENCE_DESIGN_JSON};
pub use epr::{compare_to_epr, compare_values, AnalyticValues, EprComparison, EprReference, GapRow, GAP_TOLERANCE_PP};
pub use pipeline::{derive, DerivedParameters, Provenance, ORACLE_QUBIT_LEVELS, ORACLE_RESONATOR_LEVELS};
pub use quantity::{Parameter, Quantity};
pub use report::{report_json, round_significant, summary, GoldenCheck, SummaryRow, PAPER_VALUES};
pub use sweep::{sweep, write_sweep_csv, Execution, SweepRow, SweepSpec};
pub use tune::{tune, TuneResult, TuneSpec, DEFAULT_TUNE_TOLERANCE};
