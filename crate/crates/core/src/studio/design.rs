use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::lumped::DesignInputs;

/// The reference chip: Xmon qubit, quarter-wave resonator, capacitive
/// feedline coupling.
pub const REFERENCE_DESIGN_JSON: &str = include_str!("../../examples/qubit_v1.json");

pub fn reference_design() -> DesignInputs {
    parse_design(REFERENCE_DESIGN_JSON).expect("bundled reference design is valid")
}

pub fn parse_design(text: &str) -> Result<DesignInputs> {
    let inputs: DesignInputs = serde_json::from_str(text)?;
    inputs.validate()?;
    Ok(inputs)
}

pub fn load_design(path: impl AsRef<Path>) -> Result<DesignInputs> {
    parse_design(&std::fs::read_to_string(path)?)
}

/// SHA-256 of the canonical JSON encoding of the inputs.
pub fn input_digest(inputs: &DesignInputs) -> String {
    let bytes = serde_json::to_vec(inputs).expect("design inputs serialize");
    hex::encode(Sha256::digest(&bytes))
}
