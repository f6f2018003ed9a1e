use serde::Serialize;
use serde_json::{Number, Value};

use super::pipeline::DerivedParameters;
use super::quantity::Quantity;

/// Significant digits kept for every float in a JSON report.
pub const REPORT_SIGNIFICANT_DIGITS: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GoldenCheck {
    /// |computed - value| ≤ tolerance · |value|.
    Relative { value: f64, tolerance: f64 },
    /// lo ≤ computed ≤ hi.
    Range { lo: f64, hi: f64 },
}

impl GoldenCheck {
    pub fn passes(&self, computed: f64) -> bool {
        match *self {
            GoldenCheck::Relative { value, tolerance } => {
                (computed - value).abs() <= tolerance * value.abs()
            }
            GoldenCheck::Range { lo, hi } => (lo..=hi).contains(&computed),
        }
    }
}

/// Published values for the reference design. Detuning is compared in
/// magnitude.
pub const PAPER_VALUES: [(Quantity, GoldenCheck); 13] = [
    (Quantity::CriticalCurrent, GoldenCheck::Relative { value: 29.92e-9, tolerance: 0.001 }),
    (Quantity::Ej, GoldenCheck::Relative { value: 14.86e9, tolerance: 0.001 }),
    (Quantity::Ec, GoldenCheck::Relative { value: 188.80e6, tolerance: 0.005 }),
    (Quantity::EjOverEc, GoldenCheck::Range { lo: 78.0, hi: 80.0 }),
    (Quantity::Cr, GoldenCheck::Relative { value: 499e-15, tolerance: 0.01 }),
    (Quantity::Lr, GoldenCheck::Relative { value: 2.03e-9, tolerance: 0.01 }),
    (Quantity::F01, GoldenCheck::Relative { value: 4.55e9, tolerance: 0.003 }),
    (Quantity::Detuning, GoldenCheck::Relative { value: 457e6, tolerance: 0.01 }),
    (Quantity::G01, GoldenCheck::Relative { value: 47.38e6, tolerance: 0.01 }),
    (Quantity::Chi, GoldenCheck::Relative { value: -1.44e6, tolerance: 0.02 }),
    (Quantity::QExt, GoldenCheck::Relative { value: 4432.0, tolerance: 0.05 }),
    (Quantity::Kappa, GoldenCheck::Relative { value: 1.12e6, tolerance: 0.05 }),
    (Quantity::T1, GoldenCheck::Relative { value: 13e-6, tolerance: 0.05 }),
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub quantity: &'static str,
    pub unit: &'static str,
    pub computed: Option<f64>,
    pub paper: GoldenCheck,
    pub pass: bool,
}

/// Side-by-side comparison of the derived values with the published ones.
pub fn summary(derived: &DerivedParameters) -> Vec<SummaryRow> {
    PAPER_VALUES
        .iter()
        .map(|&(quantity, check)| {
            let computed = quantity.extract(derived).map(|v| {
                if quantity == Quantity::Detuning {
                    v.abs()
                } else {
                    v
                }
            });
            SummaryRow {
                quantity: quantity.name(),
                unit: quantity.unit(),
                computed,
                paper: check,
                pass: computed.is_some_and(|v| check.passes(v)),
            }
        })
        .collect()
}

pub fn round_significant(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .unwrap_or(x)
}

fn round_floats(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            if let Some(rounded) = Number::from_f64(round_significant(x, REPORT_SIGNIFICANT_DIGITS)) {
                *n = rounded;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Pretty JSON report: the derived parameters, human-readable warnings and
/// the summary block. Floats carry 9 significant digits.
pub fn report_json(derived: &DerivedParameters, extra: Option<(&str, Value)>) -> String {
    let mut root = serde_json::to_value(derived).expect("derived parameters serialize");
    let object = root.as_object_mut().expect("struct serializes to an object");
    object.insert(
        "warning_messages".to_string(),
        Value::Array(derived.warnings.iter().map(|w| Value::String(w.to_string())).collect()),
    );
    if let Some((key, value)) = extra {
        object.insert(key.to_string(), value);
    }
    object.insert(
        "summary".to_string(),
        serde_json::to_value(summary(derived)).expect("summary serializes"),
    );
    round_floats(&mut root);
    let mut text = serde_json::to_string_pretty(&root).expect("report serializes");
    text.push('\n');
    text
}
