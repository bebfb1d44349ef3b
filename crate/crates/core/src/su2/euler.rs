use std::f64::consts::{PI, TAU};

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Threshold (radians) below which `sin θ` or `cos(θ/2)` is treated as a gimbal degeneracy.
pub const GIMBAL_EPS: f64 = 1e-9;

/// The defining spin-½ matrix.
pub type Su2Matrix = Matrix2<Complex64>;

/// Euler angles `Ω = (φ, θ, ψ)` labelling `R(Ω) = e^{−iφS₃} e^{−iθS₂} e^{−iψS₃}`.
///
/// Values are not range-reduced unless [`EulerAngles::normalize`] is called;
/// trajectories keep their winding.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EulerAngles {
    pub phi: f64,
    pub theta: f64,
    pub psi: f64,
}

impl EulerAngles {
    pub const IDENTITY: Self = Self { phi: 0.0, theta: 0.0, psi: 0.0 };

    pub const fn new(phi: f64, theta: f64, psi: f64) -> Self {
        Self { phi, theta, psi }
    }

    /// Angles of `R(Ω)⁻¹ = R(−ψ, −θ, −φ)`.
    pub fn inverse(&self) -> Self {
        Self::new(-self.psi, -self.theta, -self.phi)
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.phi, self.theta, self.psi]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    /// SO(3) representative with `θ ∈ [0, π]` and `φ, ψ ∈ [0, 2π)`.
    ///
    /// For half-integer spin the representation matrix of the result may
    /// differ from the original by an overall sign.
    pub fn normalize(&self) -> Self {
        let mut theta = self.theta.rem_euclid(TAU);
        let (mut phi, mut psi) = (self.phi, self.psi);
        if theta > PI {
            // R(φ, 2π−θ, ψ) = ±R(φ+π, θ, ψ+π)
            theta = TAU - theta;
            phi += PI;
            psi += PI;
        }
        Self::new(phi.rem_euclid(TAU), theta, psi.rem_euclid(TAU))
    }

    /// Representative that reproduces the same SU(2) element: `φ ∈ [0, 2π)`,
    /// `ψ ∈ [0, 4π)`, `θ` unchanged.
    pub fn normalize_su2(&self) -> Self {
        let k = (self.phi / TAU).floor();
        let phi = self.phi - k * TAU;
        let psi = (self.psi - k * TAU).rem_euclid(2.0 * TAU);
        Self::new(phi, self.theta, psi)
    }

    /// Extract Euler angles from a spin-½ matrix.
    ///
    /// The result satisfies `su2_matrix(Ω) = u` exactly (not only up to sign).
    /// At `sin θ < GIMBAL_EPS` only `φ ± ψ` is fixed and `φ := 0` is chosen.
    pub fn from_su2(u: &Su2Matrix) -> (Self, bool) {
        let diag = u[(1, 1)]; // cos(θ/2) e^{i(φ+ψ)/2}
        let off = u[(1, 0)]; // sin(θ/2) e^{i(φ−ψ)/2}
        let theta = 2.0 * off.norm().atan2(diag.norm());
        let degenerate = theta.sin().abs() < GIMBAL_EPS;
        let angles = if !degenerate {
            let sigma = diag.arg();
            let delta = off.arg();
            Self::new(sigma + delta, theta, sigma - delta)
        } else if diag.norm() >= off.norm() {
            Self::new(0.0, theta, 2.0 * diag.arg())
        } else {
            Self::new(0.0, theta, -2.0 * off.arg())
        };
        (angles.normalize_su2(), degenerate)
    }
}

/// `R^{(1/2)}(Ω)`.
pub fn su2_matrix(omega: &EulerAngles) -> Su2Matrix {
    let (s, c) = (0.5 * omega.theta).sin_cos();
    let sum = 0.5 * (omega.phi + omega.psi);
    let diff = 0.5 * (omega.phi - omega.psi);
    Su2Matrix::new(
        Complex64::from_polar(c, -sum),
        -Complex64::from_polar(s, -diff),
        Complex64::from_polar(s, diff),
        Complex64::from_polar(c, sum),
    )
}

/// Result of composing rotations.
///
/// `angles` is the SU(2)-faithful lift (`ψ ∈ [0, 4π)`), so
/// `R^{(s)}(angles)` equals the matrix product for every `s`, including the
/// sign for half-integer `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Composition {
    pub angles: EulerAngles,
    /// `sin θ̃ < GIMBAL_EPS`: only `φ̃ ± ψ̃` is meaningful and `φ̃ := 0` was chosen.
    pub gimbal_degenerate: bool,
}

/// Angles `Ω̃` of `R(Ω₂)R(Ω₁)` from the spherical-trigonometry relations.
///
/// `cos θ̃`, `sin θ̃ e^{iφ̃}` and `cos(θ̃/2) e^{i(φ̃+ψ̃)/2}` come from the
/// closed forms; near `θ̃ = π` the last relation degenerates and the
/// companion `sin(θ̃/2) e^{i(φ̃−ψ̃)/2}` fixes `ψ̃` instead.
pub fn compose_rotations(omega2: &EulerAngles, omega1: &EulerAngles) -> Composition {
    let (st1, ct1) = omega1.theta.sin_cos();
    let (st2, ct2) = omega2.theta.sin_cos();
    let alpha = omega1.phi + omega2.psi;
    let (sa, ca) = alpha.sin_cos();

    let cos_t = ct1 * ct2 - st1 * st2 * ca;
    let sin_t_e_phi = Complex64::from_polar(1.0, omega2.phi) * Complex64::new(ct1 * st2 + st1 * ct2 * ca, st1 * sa);

    let (sh1, ch1) = (0.5 * omega1.theta).sin_cos();
    let (sh2, ch2) = (0.5 * omega2.theta).sin_cos();
    let half_sum = Complex64::from_polar(1.0, 0.5 * (omega2.phi + omega1.psi))
        * (Complex64::from_polar(ch1 * ch2, 0.5 * alpha) - Complex64::from_polar(sh1 * sh2, -0.5 * alpha));
    let half_diff = Complex64::from_polar(1.0, 0.5 * (omega2.phi - omega1.psi))
        * (Complex64::from_polar(sh2 * ch1, -0.5 * alpha) + Complex64::from_polar(ch2 * sh1, 0.5 * alpha));

    let theta = sin_t_e_phi.norm().atan2(cos_t);
    finish(theta, sin_t_e_phi, half_sum, half_diff)
}

fn finish(theta: f64, sin_t_e_phi: Complex64, half_sum: Complex64, half_diff: Complex64) -> Composition {
    let degenerate = sin_t_e_phi.norm() < GIMBAL_EPS;
    let (phi, psi) = if !degenerate {
        let phi = sin_t_e_phi.arg();
        let psi = if half_sum.norm() >= half_diff.norm() { 2.0 * half_sum.arg() - phi } else { phi - 2.0 * half_diff.arg() };
        (phi, psi)
    } else if half_sum.norm() >= half_diff.norm() {
        (0.0, 2.0 * half_sum.arg())
    } else {
        (0.0, -2.0 * half_diff.arg())
    };
    Composition { angles: EulerAngles::new(phi, theta, psi).normalize_su2(), gimbal_degenerate: degenerate }
}

/// Angles `Ω′` of `R(Ω₂)R(Ω)R(Ω₁)`.
///
/// `cos θ′` is the closed spherical-trigonometry form; `sin θ′ e^{iφ′}` and
/// the half-angle phases are read off the spin-½ triple product.
pub fn compose_three(omega2: &EulerAngles, omega: &EulerAngles, omega1: &EulerAngles) -> Composition {
    let (st1, ct1) = omega1.theta.sin_cos();
    let (st, ct) = omega.theta.sin_cos();
    let (st2, ct2) = omega2.theta.sin_cos();
    let a = omega1.phi + omega.psi;
    let b = omega.phi + omega2.psi;
    let cos_t = (ct1 * ct - st1 * st * a.cos()) * ct2 + (st1 * (a.sin() * b.sin() - a.cos() * ct * b.cos()) - ct1 * st * b.cos()) * st2;

    let u = su2_matrix(omega2) * su2_matrix(omega) * su2_matrix(omega1);
    let half_sum = u[(1, 1)];
    let half_diff = u[(1, 0)];
    // sin θ e^{iφ} = 2 sin(θ/2)e^{i(φ−ψ)/2} · cos(θ/2)e^{i(φ+ψ)/2}
    let sin_t_e_phi = half_diff * half_sum * 2.0;
    let theta = sin_t_e_phi.norm().atan2(cos_t);
    finish(theta, sin_t_e_phi, half_sum, half_diff)
}
