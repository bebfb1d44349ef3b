//! JSON scenario configuration.
//!
//! ```json
//! {
//!   "two_s": 2,
//!   "fiducial": "pure:-1",
//!   "field": { "b0": 1.0, "b": -1.0, "drive_omega": 0.0, "mu": 1.0, "hbar": 1.3 },
//!   "initial": { "phi": 0.0, "theta": 0.5235987755982988, "psi": 0.0 },
//!   "resonance": "omega-from-theta",
//!   "periods": 1,
//!   "n_steps": 2000,
//!   "tolerance": 1e-6,
//!   "outputs": { "report": "report.json", "trajectory": "trajectory.csv" }
//! }
//! ```

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;
use serde::de::{self, SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use spincs_core::phases::Scenario;
use spincs_core::{EulerAngles, FiducialVector, FieldProtocol, GaugeChoice, SpinQuantum};

use crate::error::{CliError, CliResult};

/// Named fiducial vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiducialPreset {
    /// `|m⟩`, stored as `2m`.
    Pure { two_m: i32 },
    /// `√(2/3)|1⟩ + √(1/3)|−1⟩`.
    TwoThirds,
    /// `(|1⟩ + |−1⟩)/√2`.
    EqualPair,
    /// `(|1⟩ + |0⟩ + |−1⟩)/√3`.
    Uniform,
}

fn parse_two_m(text: &str) -> Option<i32> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: i32 = num.trim().parse().ok()?;
        return match den.trim().parse::<i32>().ok()? {
            1 => Some(2 * num),
            2 => Some(num),
            _ => None,
        };
    }
    let m: f64 = text.parse().ok()?;
    let two_m = 2.0 * m;
    (two_m.is_finite() && two_m == two_m.round() && two_m.abs() < 1e6).then_some(two_m as i32)
}

impl FromStr for FiducialPreset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "spin1-2/3-1/3" => Ok(Self::TwoThirds),
            "spin1-equal-pair" => Ok(Self::EqualPair),
            "spin1-uniform" => Ok(Self::Uniform),
            other => match other.strip_prefix("pure:") {
                Some(m) => parse_two_m(m)
                    .map(|two_m| Self::Pure { two_m })
                    .ok_or_else(|| format!("`{m}` is not an integer or half-integer magnetic number")),
                None => {
                    Err(format!("unknown fiducial preset `{other}` (expected pure:<m>, spin1-2/3-1/3, spin1-equal-pair or spin1-uniform)"))
                }
            },
        }
    }
}

impl fmt::Display for FiducialPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Pure { two_m } if two_m % 2 == 0 => write!(f, "pure:{}", two_m / 2),
            Self::Pure { two_m } => write!(f, "pure:{two_m}/2"),
            Self::TwoThirds => f.write_str("spin1-2/3-1/3"),
            Self::EqualPair => f.write_str("spin1-equal-pair"),
            Self::Uniform => f.write_str("spin1-uniform"),
        }
    }
}

/// A preset name or an explicit coefficient list ordered from `m = s` down to `m = −s`.
///
/// Coefficients are written as `[re, im]` pairs or as plain reals.
#[derive(Debug, Clone, PartialEq)]
pub enum FiducialSpec {
    Preset(FiducialPreset),
    Coefficients(Vec<Complex64>),
}

impl FiducialSpec {
    pub fn build(&self, s: SpinQuantum) -> CliResult<FiducialVector> {
        let spin1 = |f: FiducialVector| {
            if s.two_s() == 2 {
                Ok(f)
            } else {
                Err(CliError::InvalidConfig(format!("preset `{self}` needs two_s = 2, got {}", s.two_s())))
            }
        };
        match self {
            Self::Preset(FiducialPreset::Pure { two_m }) => {
                FiducialVector::pure(s, *two_m).map_err(|e| CliError::InvalidConfig(e.to_string()))
            }
            Self::Preset(FiducialPreset::TwoThirds) => spin1(FiducialVector::spin1_two_thirds()),
            Self::Preset(FiducialPreset::EqualPair) => spin1(FiducialVector::spin1_equal_pair()),
            Self::Preset(FiducialPreset::Uniform) => spin1(FiducialVector::spin1_uniform()),
            Self::Coefficients(c) => FiducialVector::new(s, c.clone()).map_err(|e| CliError::InvalidConfig(e.to_string())),
        }
    }

    /// The closed-form model system this fiducial belongs to, if any.
    pub fn scenario(&self) -> Option<Scenario> {
        match self {
            Self::Preset(FiducialPreset::Pure { two_m }) => Some(Scenario::Simplest(*two_m as f64 / 2.0)),
            Self::Preset(FiducialPreset::TwoThirds) => Some(Scenario::SimpleSpin1),
            Self::Preset(FiducialPreset::EqualPair) => Some(Scenario::SpecialSpin1),
            Self::Preset(FiducialPreset::Uniform) => Some(Scenario::A3Spin1),
            Self::Coefficients(_) => None,
        }
    }
}

impl fmt::Display for FiducialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Preset(p) => p.fmt(f),
            Self::Coefficients(c) => write!(f, "{c:?}"),
        }
    }
}

impl Serialize for FiducialSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Preset(p) => serializer.collect_str(p),
            Self::Coefficients(c) => serializer.collect_seq(c.iter().map(|z| [z.re, z.im])),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Coefficient {
    Real(f64),
    Complex([f64; 2]),
}

struct FiducialVisitor;

impl<'de> Visitor<'de> for FiducialVisitor {
    type Value = FiducialSpec;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a fiducial preset name or a list of coefficients")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<FiducialSpec, E> {
        v.parse().map(FiducialSpec::Preset).map_err(E::custom)
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<FiducialSpec, A::Error> {
        let mut out = Vec::new();
        while let Some(c) = seq.next_element::<Coefficient>()? {
            out.push(match c {
                Coefficient::Real(x) => Complex64::new(x, 0.0),
                Coefficient::Complex([re, im]) => Complex64::new(re, im),
            });
        }
        Ok(FiducialSpec::Coefficients(out))
    }
}

impl<'de> Deserialize<'de> for FiducialSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(FiducialVisitor)
    }
}

/// How the cyclic orbit is selected before integration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Resonance {
    /// Integrate from `initial` as given.
    #[default]
    None,
    /// Keep `drive_omega`, solve for `θ₀`.
    ThetaFromOmega,
    /// Keep `initial.theta`, solve for `drive_omega`.
    OmegaFromTheta,
    /// Pick `drive_omega` so the dynamical phase vanishes, then solve for `θ₀`.
    DeltaZero,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    /// JSON run report; printed to stdout when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<PathBuf>,
    /// CSV trajectory dump.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trajectory: Option<PathBuf>,
}

fn default_steps() -> usize {
    2000
}

fn default_tolerance() -> f64 {
    1e-6
}

/// One scenario run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub two_s: u32,
    pub fiducial: FiducialSpec,
    pub field: FieldProtocol,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gauge: Option<GaugeChoice>,
    #[serde(default)]
    pub initial: EulerAngles,
    #[serde(default)]
    pub resonance: Resonance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub periods: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration: Option<f64>,
    #[serde(default = "default_steps")]
    pub n_steps: usize,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub outputs: Outputs,
}

impl ScenarioConfig {
    pub fn spin(&self) -> SpinQuantum {
        SpinQuantum::from_twice(self.two_s)
    }

    /// Parses `text`, reporting the line and column of the first error against `path`.
    pub fn from_json(text: &str, path: &Path) -> CliResult<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| CliError::ConfigSyntax {
            path: path.to_path_buf(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut cfg = Self::from_json(&text, path)?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [&mut cfg.outputs.report, &mut cfg.outputs.trajectory].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |m: String| Err(CliError::InvalidConfig(m));
        if self.two_s > 40 {
            return bad(format!("two_s = {} exceeds the supported maximum of 40", self.two_s));
        }
        if self.n_steps == 0 {
            return bad("n_steps must be positive".into());
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return bad(format!("tolerance {} must be positive", self.tolerance));
        }
        let f = &self.field;
        if ![f.b0, f.b, f.drive_omega, f.mu, f.hbar].iter().all(|x| x.is_finite()) || f.hbar <= 0.0 {
            return bad("field entries must be finite and hbar positive".into());
        }
        let om = &self.initial;
        if ![om.phi, om.theta, om.psi].iter().all(|x| x.is_finite()) {
            return bad("initial angles must be finite".into());
        }
        match (self.periods, self.duration) {
            (Some(_), Some(_)) => return bad("give either periods or duration, not both".into()),
            (Some(p), None) if !(p.is_finite() && p > 0.0) => return bad(format!("periods = {p} must be positive")),
            (None, Some(d)) if !(d.is_finite() && d > 0.0) => return bad(format!("duration = {d} must be positive")),
            _ => {}
        }
        self.fiducial.build(self.spin()).map(|_| ())
    }
}
