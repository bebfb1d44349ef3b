use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::config::ScenarioConfig;
use crate::error::{CliError, CliResult};
use crate::run::Prepared;

/// Environment variable capping the sweep thread count.
pub const THREADS_ENV: &str = "SPINCS_THREADS";

pub const SWEEP_COLUMNS: [&str; 4] = ["parameter", "gamma", "delta", "intensity"];

/// Numeric configuration fields that can be swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    B0,
    B,
    DriveOmega,
    Mu,
    Hbar,
    Phi0,
    Theta0,
    Psi0,
    Periods,
    Duration,
}

impl SweepParameter {
    pub const ALL: [Self; 10] =
        [Self::B0, Self::B, Self::DriveOmega, Self::Mu, Self::Hbar, Self::Phi0, Self::Theta0, Self::Psi0, Self::Periods, Self::Duration];

    fn path(self) -> &'static str {
        match self {
            Self::B0 => "field.b0",
            Self::B => "field.b",
            Self::DriveOmega => "field.drive_omega",
            Self::Mu => "field.mu",
            Self::Hbar => "field.hbar",
            Self::Phi0 => "initial.phi",
            Self::Theta0 => "initial.theta",
            Self::Psi0 => "initial.psi",
            Self::Periods => "periods",
            Self::Duration => "duration",
        }
    }

    pub fn apply(self, cfg: &mut ScenarioConfig, value: f64) {
        match self {
            Self::B0 => cfg.field.b0 = value,
            Self::B => cfg.field.b = value,
            Self::DriveOmega => cfg.field.drive_omega = value,
            Self::Mu => cfg.field.mu = value,
            Self::Hbar => cfg.field.hbar = value,
            Self::Phi0 => cfg.initial.phi = value,
            Self::Theta0 => cfg.initial.theta = value,
            Self::Psi0 => cfg.initial.psi = value,
            Self::Periods => {
                cfg.periods = Some(value);
                cfg.duration = None;
            }
            Self::Duration => {
                cfg.duration = Some(value);
                cfg.periods = None;
            }
        }
    }
}

impl FromStr for SweepParameter {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        let short = |p: Self| p.path().rsplit('.').next().unwrap_or_default();
        let alias = match s {
            "theta0" => Some(Self::Theta0),
            "phi0" => Some(Self::Phi0),
            "psi0" => Some(Self::Psi0),
            _ => None,
        };
        alias
            .or_else(|| Self::ALL.into_iter().find(|p| p.path() == s || (p.path().starts_with("field.") && short(*p) == s)))
            .ok_or_else(|| CliError::UnknownParameter(s.to_string()))
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.path())
    }
}

/// `count` evenly spaced samples of `parameter` over `[from, to]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub from: f64,
    pub to: f64,
    pub count: usize,
}

impl SweepSpec {
    pub fn samples(&self) -> Vec<f64> {
        match self.count {
            0 => Vec::new(),
            1 => vec![self.from],
            n => (0..n).map(|k| self.from + (self.to - self.from) * k as f64 / (n - 1) as f64).collect(),
        }
    }
}

/// Thread count from [`THREADS_ENV`], `None` when unset.
pub fn thread_cap() -> CliResult<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::InvalidConfig(format!("{THREADS_ENV} = `{v}` is not a positive integer"))),
        },
    }
}

/// Rows `(parameter, Γ, Δ, I)` in sample order.
pub fn sweep(cfg: &ScenarioConfig, spec: &SweepSpec, threads: Option<usize>) -> CliResult<Vec<[f64; 4]>> {
    if !(spec.from.is_finite() && spec.to.is_finite()) {
        return Err(CliError::InvalidConfig("sweep bounds must be finite".into()));
    }
    let one = |value: f64| -> CliResult<[f64; 4]> {
        let mut c = cfg.clone();
        spec.parameter.apply(&mut c, value);
        let (report, _) = Prepared::new(&c)?.execute()?;
        Ok([value, report.phases.gamma, report.phases.delta, report.intensity])
    };
    let samples = spec.samples();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::InvalidConfig(format!("cannot start thread pool: {e}")))?;
    pool.install(|| samples.par_iter().map(|&v| one(v)).collect())
}
