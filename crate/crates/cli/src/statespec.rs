//! Qutrit state specifications shared by all commands: named fixtures,
//! raw `(r, θ, φ)` sphere coordinates, or a JSON density matrix.

use num_complex::Complex64;
use qutrit_msd_core::{abb, Operator};
use serde::Deserialize;
use std::path::Path;

/// JSON state file: `{"matrix": [[[re,im]; 3]; 3]}`.
#[derive(Debug, Deserialize)]
struct StateFile {
    matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone)]
pub struct StateSpec {
    pub named: Option<String>,
    pub theta: Option<f64>,
    pub phi: Option<f64>,
    pub r: Option<f64>,
    pub json: Option<String>,
}

pub fn named_state(name: &str) -> Result<Operator, String> {
    match name {
        "E" | "e" => Ok(abb::edge_state_e()),
        "norrell" | "N'" => Ok(abb::norrell_state()),
        "fourier" => Ok(abb::fourier_plus_state()),
        "zero" => Ok(abb::pure_state(0.0, 0.0)),
        "N" | "south" => Ok(abb::south_pole_state()),
        "mixed" => Ok(Operator::identity(3).scale(Complex64::new(1.0 / 3.0, 0.0))),
        other => Err(format!(
            "unknown state name '{other}' (expected E, norrell, fourier, zero, N, or mixed)"
        )),
    }
}

pub fn load_state(path: &Path) -> Result<Operator, String> {
    let json = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: StateFile = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    if file.matrix.len() != 3 || file.matrix.iter().any(|r| r.len() != 3) {
        return Err("state matrix must be 3x3".into());
    }
    let entries = file
        .matrix
        .iter()
        .flatten()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    let op = Operator::from_entries(3, entries).map_err(|e| e.to_string())?;
    op.check_state().map_err(|e| e.to_string())?;
    Ok(op)
}

impl StateSpec {
    /// Resolves the spec; exactly one of the three forms must be present.
    pub fn resolve(&self) -> Result<Operator, String> {
        let forms = [
            self.named.is_some(),
            self.theta.is_some() || self.phi.is_some() || self.r.is_some(),
            self.json.is_some(),
        ];
        match forms.iter().filter(|&&f| f).count() {
            0 => return Err("no state given: use --named, --theta/--phi/--r, or --json".into()),
            1 => {}
            _ => return Err("give exactly one of --named, coordinates, or --json".into()),
        }
        if let Some(name) = &self.named {
            return named_state(name);
        }
        if let Some(path) = &self.json {
            return load_state(Path::new(path));
        }
        let theta = self.theta.unwrap_or(0.0);
        let phi = self.phi.unwrap_or(0.0);
        let r = self.r.unwrap_or(1.0);
        if !(0.0..=1.0).contains(&r) {
            return Err(format!("r = {r} outside [0, 1]"));
        }
        Ok(abb::depolarized_state(r, theta, phi))
    }
}
