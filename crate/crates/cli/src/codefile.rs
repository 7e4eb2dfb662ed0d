//! JSON serialization of stabilizer codes.
//!
//! Format: `{"d":3, "n":4, "generators":[[x...,z...],...],
//! "logical_z":[...], "logical_x":[...]}` with every row a flat
//! `(x…, z…)` vector of integers mod d, in the same order as the
//! published generator tables. The two built-in codes ship as fixtures in
//! this exact format.

use qutrit_msd_core::codes::StabilizerCode;
use qutrit_msd_core::pauli::PauliLabel;
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const EDGE_CODE_JSON: &str = include_str!("../fixtures/edge_code.json");
pub const FACE_CODE_JSON: &str = include_str!("../fixtures/face_code.json");

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeFile {
    pub d: u8,
    pub n: usize,
    pub generators: Vec<Vec<i64>>,
    pub logical_z: Vec<i64>,
    pub logical_x: Vec<i64>,
}

impl CodeFile {
    pub fn to_code(&self) -> Result<StabilizerCode, String> {
        let code = StabilizerCode::from_rows(
            self.d,
            self.n,
            &self.generators,
            &self.logical_z,
            &self.logical_x,
        )
        .map_err(|e| e.to_string())?;
        let violations = code.validate();
        if !violations.is_empty() {
            return Err(qutrit_msd_core::codes::violation_report(&violations));
        }
        Ok(code)
    }

    pub fn from_code(code: &StabilizerCode) -> Self {
        let row = |l: &PauliLabel| l.row().iter().map(|&v| v as i64).collect();
        CodeFile {
            d: code.d,
            n: code.n,
            generators: code.generators.iter().map(&row).collect(),
            logical_z: row(&code.logical_z),
            logical_x: row(&code.logical_x),
        }
    }
}

pub fn parse_code(json: &str) -> Result<StabilizerCode, String> {
    let file: CodeFile = serde_json::from_str(json).map_err(|e| e.to_string())?;
    file.to_code()
}

pub fn load_code(path: &Path) -> Result<StabilizerCode, String> {
    let json = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_code(&json)
}

pub fn code_to_json(code: &StabilizerCode) -> String {
    serde_json::to_string_pretty(&CodeFile::from_code(code)).expect("serializable")
}

/// Resolves `edge`, `face`, or a path to a JSON code file.
pub fn resolve_code(spec: &str) -> Result<StabilizerCode, String> {
    match spec {
        "edge" => Ok(qutrit_msd_core::codes::edge_code()),
        "face" => Ok(qutrit_msd_core::codes::face_code()),
        path => load_code(Path::new(path)),
    }
}
