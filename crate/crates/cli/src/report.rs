use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use spincs_core::{EulerAngles, FieldProtocol, GaugeChoice, PhaseResult};

use crate::error::{CliError, CliResult};

/// Trajectory CSV header.
pub const TRAJECTORY_COLUMNS: [&str; 9] = ["t", "phi", "theta", "psi", "phi_dot", "theta_dot", "psi_dot", "H", "s3_expect"];

/// A computed quantity checked against its expected value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub quantity: String,
    pub computed: f64,
    pub expected: f64,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Comparison {
    pub fn new(quantity: &str, computed: f64, expected: f64, tolerance: f64) -> Self {
        let deviation = (computed - expected).abs();
        Self { quantity: quantity.into(), computed, expected, deviation, tolerance, passed: deviation < tolerance }
    }
}

/// Outcome of `spincs run`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub scenario: Option<String>,
    pub two_s: u32,
    pub gauge: Option<GaugeChoice>,
    pub initial: EulerAngles,
    pub field: FieldProtocol,
    pub t_final: f64,
    pub n_steps: usize,
    pub phases: PhaseResult,
    pub intensity: f64,
    pub winding_turns: [f64; 3],
    pub closure_residual: f64,
    pub consistency_residual: Option<f64>,
    pub comparisons: Vec<Comparison>,
    pub passed: bool,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(CliError::Json)?;
    s.push('\n');
    Ok(s)
}

/// 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv<W: Write, const N: usize>(out: W, header: &[&str; N], rows: &[[f64; N]]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|x| format_float(*x)))?;
    }
    w.flush().map_err(|e| CliError::Csv(e.into()))?;
    Ok(())
}

pub fn write_file(path: &Path, contents: &[u8]) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}
