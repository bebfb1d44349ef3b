//! Field protocols, the classical Hamiltonian `⟨Ω|Ĥ|Ω⟩`, the Lagrangian and the
//! degenerate first-order canonical equations.

mod canonical;
mod cyclic;
mod integrate;
mod trajectory;

pub use canonical::{canonical_matrix, canonical_rhs, canonical_rhs_with, CanonicalSolution, GaugeChoice, CONSISTENCY_TOL, SINGULAR_DET};
pub use cyclic::{cyclic_omega, cyclic_theta, delta_zero_omega, CyclicCase};
pub(crate) use integrate::exact_evolution_matrix;
pub use integrate::{integrate_trajectory, integrate_with, precession_trajectory};
pub use trajectory::{OmegaDot, Trajectory, CLOSURE_TOL};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coherent::{a_coefficients, a_two, expectation_spin_at, CoherentState, FiducialVector};
use crate::linalg::{c, inner, ComplexMatrix, I};
use crate::su2::{spin_operators, EulerAngles, SpinQuantum};

/// Rotating field `B(t) = (B₀ cos ωt, B₀ sin ωt, B)` coupled as `Ĥ = −μ B·Ŝ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldProtocol {
    pub b0: f64,
    pub b: f64,
    pub drive_omega: f64,
    #[serde(default = "one")]
    pub mu: f64,
    #[serde(default = "one")]
    pub hbar: f64,
}

fn one() -> f64 {
    1.0
}

impl Default for FieldProtocol {
    fn default() -> Self {
        Self { b0: 0.0, b: 0.0, drive_omega: 0.0, mu: 1.0, hbar: 1.0 }
    }
}

impl FieldProtocol {
    pub fn new(b0: f64, b: f64, drive_omega: f64) -> Self {
        Self { b0, b, drive_omega, ..Self::default() }
    }

    pub fn with_mu(self, mu: f64) -> Self {
        Self { mu, ..self }
    }

    pub fn with_hbar(self, hbar: f64) -> Self {
        Self { hbar, ..self }
    }

    pub fn field_at(&self, t: f64) -> [f64; 3] {
        let (s, c) = (self.drive_omega * t).sin_cos();
        [self.b0 * c, self.b0 * s, self.b]
    }

    /// `Ĥ(t)` in the spin-`s` irrep.
    pub fn hamiltonian_matrix(&self, s: SpinQuantum, t: f64) -> ComplexMatrix {
        let ops = spin_operators(s);
        let [bx, by, bz] = self.field_at(t);
        (&ops.s1 * c(bx, 0.0) + &ops.s2 * c(by, 0.0) + &ops.s3 * c(bz, 0.0)) * c(-self.mu, 0.0)
    }

    /// Period `2π/|ω|` of the drive; `None` for a static field.
    pub fn period(&self) -> Option<f64> {
        (self.drive_omega != 0.0).then(|| 2.0 * std::f64::consts::PI / self.drive_omega.abs())
    }
}

/// `H(Ω, t) = −μ[B₀ Re(e^{−iωt}⟨S₊⟩) + B⟨S₃⟩]`.
pub fn hamiltonian_expectation(fid: &FiducialVector, omega: &EulerAngles, field: &FieldProtocol, t: f64) -> f64 {
    let e = expectation_spin_at(fid, omega);
    -field.mu * (field.b0 * (Complex64::from_polar(1.0, -field.drive_omega * t) * e.s_plus).re + field.b * e.s3)
}

/// `⟨Ω|Ĥ(t)|Ω⟩` by direct sandwich.
pub fn hamiltonian_expectation_direct(fid: &FiducialVector, omega: &EulerAngles, field: &FieldProtocol, t: f64) -> f64 {
    let v = CoherentState::new(fid, *omega);
    let v = v.amplitudes();
    inner(v, &(field.hamiltonian_matrix(fid.spin(), t) * v)).re
}

/// A classical Hamiltonian on Euler-angle space.
pub trait ClassicalHamiltonian {
    fn value(&self, omega: &EulerAngles, t: f64) -> f64;

    /// `(∂H/∂φ, ∂H/∂θ, ∂H/∂ψ)`; the default is a central difference.
    fn gradient(&self, omega: &EulerAngles, t: f64) -> [f64; 3] {
        const H: f64 = 1e-6;
        let base = omega.as_array();
        let mut g = [0.0; 3];
        for (k, gk) in g.iter_mut().enumerate() {
            let mut plus = base;
            let mut minus = base;
            plus[k] += H;
            minus[k] -= H;
            *gk = (self.value(&EulerAngles::from_array(plus), t) - self.value(&EulerAngles::from_array(minus), t)) / (2.0 * H);
        }
        g
    }
}

/// `⟨Ω|−μB(t)·Ŝ|Ω⟩` with analytic derivatives.
#[derive(Debug, Clone, Copy)]
pub struct FieldHamiltonian<'a> {
    pub fiducial: &'a FiducialVector,
    pub field: &'a FieldProtocol,
}

impl ClassicalHamiltonian for FieldHamiltonian<'_> {
    fn value(&self, omega: &EulerAngles, t: f64) -> f64 {
        hamiltonian_expectation(self.fiducial, omega, self.field, t)
    }

    fn gradient(&self, omega: &EulerAngles, t: f64) -> [f64; 3] {
        let fid = self.fiducial;
        let field = self.field;
        let a = a_coefficients(fid, omega.psi);
        let p = fid.ladder_sum();
        let (st, ct) = omega.theta.sin_cos();
        let plus = Complex64::from_polar(1.0, omega.phi + omega.psi) * p;
        let minus = Complex64::from_polar(1.0, omega.phi - omega.psi) * p.conj();

        let s_plus = Complex64::from_polar(a.a0 * st, omega.phi) + a_two(fid, omega);
        let d_phi_plus = I * s_plus;
        let d_theta_plus = Complex64::from_polar(a.a0 * ct, omega.phi) - 0.5 * st * (plus + minus);
        let d_psi_plus = 0.5 * I * ((1.0 + ct) * plus + (1.0 - ct) * minus);

        let d_theta_s3 = -a.a0 * st - a.a1 * ct;
        let d_psi_s3 = a.a4 * st;

        let rot = Complex64::from_polar(1.0, -field.drive_omega * t);
        let k = -field.mu;
        [
            k * field.b0 * (rot * d_phi_plus).re,
            k * (field.b0 * (rot * d_theta_plus).re + field.b * d_theta_s3),
            k * (field.b0 * (rot * d_psi_plus).re + field.b * d_psi_s3),
        ]
    }
}

/// Components `(α_φ, α_θ, α_ψ)` of the one-form `α = ħ[(A₀cos θ − A₁sin θ)dφ + A₄dθ + A₀dψ]`.
pub fn one_form(fid: &FiducialVector, omega: &EulerAngles, hbar: f64) -> [f64; 3] {
    let a = a_coefficients(fid, omega.psi);
    let (st, ct) = omega.theta.sin_cos();
    [hbar * (a.a0 * ct - a.a1 * st), hbar * a.a4, hbar * a.a0]
}

/// `A₃ = −A₁ sin θ φ̇ + A₄ θ̇`.
pub fn a_three(fid: &FiducialVector, omega: &EulerAngles, omega_dot: &OmegaDot) -> f64 {
    let a = a_coefficients(fid, omega.psi);
    -a.a1 * omega.theta.sin() * omega_dot.phi_dot + a.a4 * omega_dot.theta_dot
}

/// Topological part `ħ[A₀(φ̇cos θ + ψ̇) + A₃]`, split as `(A₀ part, A₃ part)`.
pub fn topological_parts(fid: &FiducialVector, omega: &EulerAngles, omega_dot: &OmegaDot, hbar: f64) -> (f64, f64) {
    let a0 = fid.a0();
    (hbar * a0 * (omega_dot.phi_dot * omega.theta.cos() + omega_dot.psi_dot), hbar * a_three(fid, omega, omega_dot))
}

pub fn topological_term(fid: &FiducialVector, omega: &EulerAngles, omega_dot: &OmegaDot, hbar: f64) -> f64 {
    let (x, y) = topological_parts(fid, omega, omega_dot, hbar);
    x + y
}

/// `Re⟨Ω|iħ∂ₜ|Ω⟩` by a central difference of the state along `Ω + τΩ̇`.
pub fn topological_term_fd(fid: &FiducialVector, omega: &EulerAngles, omega_dot: &OmegaDot, hbar: f64, h: f64) -> f64 {
    let shift = |tau: f64| {
        EulerAngles::new(omega.phi + tau * omega_dot.phi_dot, omega.theta + tau * omega_dot.theta_dot, omega.psi + tau * omega_dot.psi_dot)
    };
    let here = CoherentState::new(fid, *omega);
    let fwd = CoherentState::new(fid, shift(h));
    let bwd = CoherentState::new(fid, shift(-h));
    let deriv = (fwd.amplitudes() - bwd.amplitudes()) / c(2.0 * h, 0.0);
    (I * hbar * inner(here.amplitudes(), &deriv)).re
}

/// `L = ħ[A₀(φ̇cos θ + ψ̇) + A₃] − H`.
pub fn lagrangian(fid: &FiducialVector, omega: &EulerAngles, omega_dot: &OmegaDot, field: &FieldProtocol, t: f64) -> f64 {
    topological_term(fid, omega, omega_dot, field.hbar) - hamiltonian_expectation(fid, omega, field, t)
}
