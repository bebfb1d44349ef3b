use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::su2::EulerAngles;

/// Per-angle closure tolerance (modulo 2π).
pub const CLOSURE_TOL: f64 = 1e-6;

/// `(φ̇, θ̇, ψ̇)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct OmegaDot {
    pub phi_dot: f64,
    pub theta_dot: f64,
    pub psi_dot: f64,
}

impl OmegaDot {
    pub const fn new(phi_dot: f64, theta_dot: f64, psi_dot: f64) -> Self {
        Self { phi_dot, theta_dot, psi_dot }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.phi_dot, self.theta_dot, self.psi_dot]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|x| x.is_finite())
    }
}

/// Time-sampled path `Ω(t)` with rates, unwrapped (winding is kept).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    times: Vec<f64>,
    omegas: Vec<EulerAngles>,
    omega_dots: Vec<OmegaDot>,
    closure_residual: f64,
}

fn wrapped(x: f64) -> f64 {
    x - TAU * (x / TAU).round()
}

impl Trajectory {
    pub fn new(times: Vec<f64>, omegas: Vec<EulerAngles>, omega_dots: Vec<OmegaDot>) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::InvalidTrajectory("no nodes".into()));
        }
        if times.len() != omegas.len() || times.len() != omega_dots.len() {
            return Err(Error::InvalidTrajectory(format!(
                "length mismatch: {} times, {} angles, {} rates",
                times.len(),
                omegas.len(),
                omega_dots.len()
            )));
        }
        if times.windows(2).any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater)) {
            return Err(Error::InvalidTrajectory("times must be strictly increasing".into()));
        }
        if omegas.iter().any(|o| !o.as_array().iter().all(|x| x.is_finite())) || omega_dots.iter().any(|d| !d.is_finite()) {
            return Err(Error::InvalidTrajectory("non-finite sample".into()));
        }
        let first = omegas[0].as_array();
        let last = omegas[omegas.len() - 1].as_array();
        let closure_residual = (0..3).map(|k| wrapped(last[k] - first[k]).abs()).fold(0.0, f64::max);
        Ok(Self { times, omegas, omega_dots, closure_residual })
    }

    /// Samples `f(t) = (Ω, Ω̇)` on `n_steps + 1` uniform nodes of `[t0, t1]`.
    pub fn from_fn(t0: f64, t1: f64, n_steps: usize, f: impl Fn(f64) -> (EulerAngles, OmegaDot)) -> Result<Self> {
        if n_steps == 0 {
            return Err(Error::InvalidArgument("n_steps must be at least 1".into()));
        }
        let times: Vec<f64> = (0..=n_steps).map(|k| t0 + (t1 - t0) * k as f64 / n_steps as f64).collect();
        let (omegas, dots) = times.iter().map(|&t| f(t)).unzip();
        Self::new(times, omegas, dots)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn omegas(&self) -> &[EulerAngles] {
        &self.omegas
    }

    pub fn omega_dots(&self) -> &[OmegaDot] {
        &self.omega_dots
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn start(&self) -> EulerAngles {
        self.omegas[0]
    }

    pub fn end(&self) -> EulerAngles {
        self.omegas[self.omegas.len() - 1]
    }

    /// Largest per-angle mismatch `|Ω(T) − Ω(0)|` modulo 2π.
    pub fn closure_residual(&self) -> f64 {
        self.closure_residual
    }

    pub fn is_closed(&self) -> bool {
        self.closure_residual < CLOSURE_TOL
    }

    /// Net unwrapped change `Ω(T) − Ω(0)`.
    pub fn winding(&self) -> [f64; 3] {
        let (a, b) = (self.start().as_array(), self.end().as_array());
        [b[0] - a[0], b[1] - a[1], b[2] - a[2]]
    }

    /// The same path traversed backwards over the same time window.
    pub fn reversed(&self) -> Self {
        let (t0, t1) = (self.times[0], self.times[self.times.len() - 1]);
        let times = self.times.iter().rev().map(|&t| t0 + t1 - t).collect();
        let omegas = self.omegas.iter().rev().copied().collect();
        let dots = self.omega_dots.iter().rev().map(|d| OmegaDot::new(-d.phi_dot, -d.theta_dot, -d.psi_dot)).collect();
        Self { times, omegas, omega_dots: dots, closure_residual: self.closure_residual }
    }
}
