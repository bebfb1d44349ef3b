//! Geometric and dynamical phases along closed paths, the curvature two-form and
//! closed-form values for the four model systems.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coherent::{a_coefficients, FiducialVector};
use crate::dynamics::{hamiltonian_expectation, one_form, topological_parts, FieldProtocol, Trajectory};
use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre, QuadratureSpec};
use crate::su2::EulerAngles;

/// `Γ(C)`, `Δ(C)` and the total phase angle `(Γ − Δ)/ħ`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PhaseResult {
    pub gamma: f64,
    pub delta: f64,
    pub gamma_a0_part: f64,
    pub gamma_a3_part: f64,
    pub phase_angle: f64,
}

impl PhaseResult {
    pub fn new(gamma_a0_part: f64, gamma_a3_part: f64, delta: f64, hbar: f64) -> Self {
        let gamma = gamma_a0_part + gamma_a3_part;
        Self { gamma, delta, gamma_a0_part, gamma_a3_part, phase_angle: (gamma - delta) / hbar }
    }

    /// `Γ/ħ`.
    pub fn gamma_angle(&self, hbar: f64) -> f64 {
        self.gamma / hbar
    }
}

/// Composite Simpson on possibly non-uniform nodes; an odd interval count gets a
/// three-point correction on the last interval.
pub fn simpson(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = x.len();
    if n < 3 || y.len() != n {
        return Err(Error::TooFewNodes(n.min(y.len())));
    }
    let intervals = n - 1;
    let paired = intervals - intervals % 2;
    let mut sum = 0.0;
    for i in (0..paired).step_by(2) {
        let h0 = x[i + 1] - x[i];
        let h1 = x[i + 2] - x[i + 1];
        let hs = h0 + h1;
        sum += hs / 6.0 * ((2.0 - h1 / h0) * y[i] + hs * hs / (h0 * h1) * y[i + 1] + (2.0 - h0 / h1) * y[i + 2]);
    }
    if intervals % 2 == 1 {
        let h0 = x[n - 2] - x[n - 3];
        let h1 = x[n - 1] - x[n - 2];
        let alpha = (2.0 * h1 * h1 + 3.0 * h0 * h1) / (6.0 * (h0 + h1));
        let beta = (h1 * h1 + 3.0 * h0 * h1) / (6.0 * h0);
        let eta = h1 * h1 * h1 / (6.0 * h0 * (h0 + h1));
        sum += alpha * y[n - 1] + beta * y[n - 2] - eta * y[n - 3];
    }
    Ok(sum)
}

/// `Γ(C) = ∫ ħ[A₀(φ̇cos θ + ψ̇) + A₃] dt`; `delta` is left at zero.
///
/// Open paths are integrated as well; callers decide whether closure matters.
pub fn geometric_phase(fid: &FiducialVector, traj: &Trajectory, hbar: f64) -> Result<PhaseResult> {
    let (a0, a3): (Vec<f64>, Vec<f64>) =
        traj.omegas().iter().zip(traj.omega_dots()).map(|(om, d)| topological_parts(fid, om, d, hbar)).unzip();
    Ok(PhaseResult::new(simpson(traj.times(), &a0)?, simpson(traj.times(), &a3)?, 0.0, hbar))
}

/// `Δ(C) = ∫ ⟨Ω|Ĥ(t)|Ω⟩ dt`; the `gamma` fields are left at zero.
pub fn dynamical_phase(fid: &FiducialVector, traj: &Trajectory, field: &FieldProtocol) -> Result<PhaseResult> {
    let h: Vec<f64> = traj.times().iter().zip(traj.omegas()).map(|(&t, om)| hamiltonian_expectation(fid, om, field, t)).collect();
    Ok(PhaseResult::new(0.0, 0.0, simpson(traj.times(), &h)?, field.hbar))
}

/// Both phases along a trajectory.
pub fn total_phase(fid: &FiducialVector, traj: &Trajectory, field: &FieldProtocol) -> Result<PhaseResult> {
    let g = geometric_phase(fid, traj, field.hbar)?;
    let d = dynamical_phase(fid, traj, field)?;
    Ok(PhaseResult::new(g.gamma_a0_part, g.gamma_a3_part, d.delta, field.hbar))
}

/// `1 + cos[(Γ − Δ)/ħ]`.
pub fn interference_intensity(result: &PhaseResult) -> f64 {
    1.0 + result.phase_angle.cos()
}

/// Coefficients of `dω` on `dθ∧dφ`, `dφ∧dψ`, `dψ∧dθ`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TwoFormValue {
    pub dtheta_dphi: f64,
    pub dphi_dpsi: f64,
    pub dpsi_dtheta: f64,
}

impl TwoFormValue {
    /// `dω(X, Y)` for tangent vectors given as `(φ, θ, ψ)` components.
    pub fn evaluate(&self, x: [f64; 3], y: [f64; 3]) -> f64 {
        let [xp, xt, xs] = x;
        let [yp, yt, ys] = y;
        self.dtheta_dphi * (xt * yp - xp * yt) + self.dphi_dpsi * (xp * ys - xs * yp) + self.dpsi_dtheta * (xs * yt - xt * ys)
    }
}

/// `dω = −ħ(A₀sin θ + A₁cos θ) dθ∧dφ − ħA₄sin θ dφ∧dψ + ħA₁ dψ∧dθ`.
pub fn two_form(fid: &FiducialVector, omega: &EulerAngles, hbar: f64) -> TwoFormValue {
    let a = a_coefficients(fid, omega.psi);
    let (st, ct) = omega.theta.sin_cos();
    TwoFormValue { dtheta_dphi: -hbar * (a.a0 * st + a.a1 * ct), dphi_dpsi: -hbar * a.a4 * st, dpsi_dtheta: hbar * a.a1 }
}

/// A closed curve `v ↦ Ω(v)`, `v ∈ [0, 2π]`, in Euler-angle coordinates.
pub trait ClosedCurve {
    fn point(&self, v: f64) -> [f64; 3];
    fn tangent(&self, v: f64) -> [f64; 3];
}

/// `φ = φ₀ + n_φ v`, `θ = θ₀`, `ψ = ψ₀ + n_ψ v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleOrbit {
    pub theta: f64,
    pub phi0: f64,
    pub psi0: f64,
    pub phi_winding: f64,
    pub psi_winding: f64,
}

impl CircleOrbit {
    /// `ψ = −φ`, one turn.
    pub fn locked(theta: f64) -> Self {
        Self { theta, phi0: 0.0, psi0: 0.0, phi_winding: 1.0, psi_winding: -1.0 }
    }

    /// `ψ = 0`, one turn.
    pub fn frozen(theta: f64) -> Self {
        Self { theta, phi0: 0.0, psi0: 0.0, phi_winding: 1.0, psi_winding: 0.0 }
    }
}

impl ClosedCurve for CircleOrbit {
    fn point(&self, v: f64) -> [f64; 3] {
        [self.phi0 + self.phi_winding * v, self.theta, self.psi0 + self.psi_winding * v]
    }

    fn tangent(&self, _v: f64) -> [f64; 3] {
        [self.phi_winding, 0.0, self.psi_winding]
    }
}

/// `X(u, v) = (1 − u)·inner(v) + u·outer(v)`, `u ∈ [0, 1]`.
///
/// Its oriented boundary is `outer − inner`, so the surface integral of `dω`
/// equals `∮_outer ω − ∮_inner ω`.
pub struct RuledSurface<'a> {
    pub inner: &'a dyn ClosedCurve,
    pub outer: &'a dyn ClosedCurve,
}

impl RuledSurface<'_> {
    fn check_closed(&self) -> Result<()> {
        let gap = |c: &dyn ClosedCurve| {
            let (a, b) = (c.point(0.0), c.point(TAU));
            [b[0] - a[0], b[1] - a[1], b[2] - a[2]]
        };
        let (gi, go) = (gap(self.inner), gap(self.outer));
        for k in 0..3 {
            let turns = gi[k] / TAU;
            if (turns - turns.round()).abs() > 1e-9 {
                return Err(Error::OpenSurface(format!("inner curve does not close in coordinate {k}")));
            }
            if (gi[k] - go[k]).abs() > 1e-9 {
                return Err(Error::OpenSurface(format!("inner and outer windings differ in coordinate {k}")));
            }
        }
        Ok(())
    }
}

/// `∫_S dω` with Gauss–Legendre in `u` (`n_theta` nodes) and the periodic
/// trapezoid rule in `v` (`n_phi` nodes).
pub fn surface_phase(fid: &FiducialVector, surface: &RuledSurface<'_>, quad: &QuadratureSpec, hbar: f64) -> Result<f64> {
    surface.check_closed()?;
    let (xs, ws) = gauss_legendre(quad.n_theta);
    let dv = TAU / quad.n_phi as f64;
    let mut total = 0.0;
    for j in 0..quad.n_phi {
        let v = j as f64 * dv;
        let (pi, po) = (surface.inner.point(v), surface.outer.point(v));
        let (ti, to) = (surface.inner.tangent(v), surface.outer.tangent(v));
        let xu = [po[0] - pi[0], po[1] - pi[1], po[2] - pi[2]];
        for (x, w) in xs.iter().zip(&ws) {
            let u = 0.5 * (x + 1.0);
            let p: [f64; 3] = std::array::from_fn(|k| (1.0 - u) * pi[k] + u * po[k]);
            if !(p[1] > 0.0 && p[1] < PI) {
                return Err(Error::ChartViolation { theta: p[1], u, v });
            }
            let xv: [f64; 3] = std::array::from_fn(|k| (1.0 - u) * ti[k] + u * to[k]);
            total += 0.5 * w * dv * two_form(fid, &EulerAngles::from_array(p), hbar).evaluate(xu, xv);
        }
    }
    Ok(total)
}

/// `∮ ω` along a closed curve by the periodic trapezoid rule.
pub fn line_phase(fid: &FiducialVector, curve: &dyn ClosedCurve, n: usize, hbar: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("at least one node is needed".into()));
    }
    let dv = TAU / n as f64;
    Ok((0..n)
        .map(|j| {
            let v = j as f64 * dv;
            let w = one_form(fid, &EulerAngles::from_array(curve.point(v)), hbar);
            let t = curve.tangent(v);
            dv * (w[0] * t[0] + w[1] * t[1] + w[2] * t[2])
        })
        .sum())
}

/// The four model systems with closed-form phases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    /// Pure `|m⟩` (any real `m` for the substitution check).
    Simplest(f64),
    /// `√(2/3)|1⟩ + √(1/3)|−1⟩`.
    SimpleSpin1,
    /// `(|1⟩ + |−1⟩)/√2`.
    SpecialSpin1,
    /// `(|1⟩ + |0⟩ + |−1⟩)/√3`.
    A3Spin1,
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simple-spin1" => Ok(Self::SimpleSpin1),
            "special-spin1" => Ok(Self::SpecialSpin1),
            "a3-spin1" => Ok(Self::A3Spin1),
            other => match other.strip_prefix("simplest:").map(str::parse::<f64>) {
                Some(Ok(m)) if m.is_finite() => Ok(Self::Simplest(m)),
                _ => Err(Error::UnknownCase(other.to_string())),
            },
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Simplest(m) => write!(f, "simplest:{m}"),
            Self::SimpleSpin1 => f.write_str("simple-spin1"),
            Self::SpecialSpin1 => f.write_str("special-spin1"),
            Self::A3Spin1 => f.write_str("a3-spin1"),
        }
    }
}

/// `4√2/3 = 2·⟨Ψ₀|S₊|Ψ₀⟩` for the uniform spin-1 fiducial.
pub const A3_WEIGHT: f64 = 4.0 * std::f64::consts::SQRT_2 / 3.0;

/// Closed-form `Γ` and `Δ` over one period `2π/|ω|` of the cyclic orbit at `θ₀`.
///
/// For `ω < 0` the orbit winds backwards: `Γ` changes sign and `Δ` uses `|ω|`.
pub fn scenario_closed_form(case: Scenario, field: &FieldProtocol, theta0: f64) -> Result<PhaseResult> {
    let hbar = field.hbar;
    if matches!(case, Scenario::SpecialSpin1) {
        return Ok(PhaseResult::new(0.0, 0.0, 0.0, hbar));
    }
    if field.drive_omega == 0.0 {
        return Err(Error::InvalidArgument("a static field has no cyclic period".into()));
    }
    let sign = field.drive_omega.signum();
    let w = field.drive_omega.abs();
    let (st, ct) = theta0.sin_cos();
    let pure = |m: f64| {
        PhaseResult::new(sign * (-TAU * m * hbar * (1.0 - ct)), 0.0, -(TAU * field.mu * m / w) * (field.b * ct + field.b0 * st), hbar)
    };
    Ok(match case {
        Scenario::Simplest(m) => pure(m),
        Scenario::SimpleSpin1 => pure(1.0 / 3.0),
        Scenario::A3Spin1 => PhaseResult::new(
            0.0,
            sign * (-A3_WEIGHT * hbar * PI * st),
            -A3_WEIGHT * (PI * field.mu / w) * (field.b0 * ct - field.b * st),
            hbar,
        ),
        Scenario::SpecialSpin1 => unreachable!("handled above"),
    })
}
