//! Batch front end for `spincs-core`: scenario runs, parameter sweeps and the
//! built-in invariant suite.

pub mod check;
pub mod config;
pub mod error;
pub mod report;
pub mod run;
pub mod sweep;

pub use check::{run_checks, CheckLevel, CheckReport};
pub use config::{FiducialPreset, FiducialSpec, Resonance, ScenarioConfig};
pub use error::{CliError, CliResult};
pub use report::RunReport;
pub use run::Prepared;
pub use sweep::{sweep, SweepParameter, SweepSpec};
