use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{spin_operators, EulerAngles, SpinQuantum, GIMBAL_EPS};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Normal-ordered parameters: `R = exp(z₊S₊) exp(z₃S₃) exp(z₋S₋)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianParams {
    pub z_plus: Complex64,
    pub z_3: Complex64,
    pub z_minus: Complex64,
}

/// Anti-normal-ordered parameters: `R = exp(w₋S₋) exp(w₃S₃) exp(w₊S₊)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AntiNormalParams {
    pub w_minus: Complex64,
    pub w_3: Complex64,
    pub w_plus: Complex64,
}

/// `z₊ = −tan(θ/2)e^{−iφ}`, `z₃ = −2 ln[cos(θ/2) e^{i(φ+ψ)/2}]`, `z₋ = tan(θ/2)e^{−iψ}`.
///
/// The logarithm is the principal branch; `z₃` is only meaningful modulo
/// `4πi`, which leaves `exp(z₃S₃)` unchanged for every `s`.
///
/// The factors grow like `tan^{2s}(θ/2)` while their product stays unitary, so
/// reconstruction loses about `2s·log₁₀ tan(θ/2)` digits as `θ → π`.
pub fn gaussian_decomposition(omega: &EulerAngles) -> Result<GaussianParams> {
    let (t, half) = pole_check(omega)?;
    let z_3 = -2.0 * Complex64::from_polar(half.cos(), 0.5 * (omega.phi + omega.psi)).ln();
    Ok(GaussianParams { z_plus: -Complex64::from_polar(t, -omega.phi), z_3, z_minus: Complex64::from_polar(t, -omega.psi) })
}

fn pole_check(omega: &EulerAngles) -> Result<(f64, f64)> {
    let half = 0.5 * omega.theta;
    // cos(θ/2) = 0 exactly at θ ≡ π (mod 2π)
    if half.cos().abs() < 0.5 * GIMBAL_EPS {
        return Err(Error::AngleAtPole { theta: omega.theta });
    }
    Ok((half.tan(), half))
}

/// `exp(z N)` for a nilpotent `N`, summed exactly.
fn exp_nilpotent(n: &ComplexMatrix, z: Complex64) -> ComplexMatrix {
    let d = n.nrows();
    let mut out = ComplexMatrix::identity(d, d);
    let mut term = ComplexMatrix::identity(d, d);
    for k in 1..d {
        term = &term * n * (z / k as f64);
        out += &term;
    }
    out
}

fn exp_diag(s3: &ComplexMatrix, z: Complex64) -> ComplexMatrix {
    let d = s3.nrows();
    ComplexMatrix::from_fn(d, d, |i, j| if i == j { (z * s3[(i, i)]).exp() } else { Complex64::new(0.0, 0.0) })
}

impl GaussianParams {
    /// `exp(z₊S₊) exp(z₃S₃) exp(z₋S₋)` in the spin-`s` irrep.
    pub fn reconstruct(&self, s: SpinQuantum) -> ComplexMatrix {
        let ops = spin_operators(s);
        exp_nilpotent(&ops.plus, self.z_plus) * exp_diag(&ops.s3, self.z_3) * exp_nilpotent(&ops.minus, self.z_minus)
    }

    /// Inverse map back to Euler angles.
    ///
    /// Fails with [`Error::NotARotation`] when the parameters are not those
    /// of a unitary rotation.
    pub fn to_euler(&self) -> Result<EulerAngles> {
        let t = self.z_plus.norm();
        let theta = 2.0 * t.atan();
        let phi = if t > 0.0 { -(-self.z_plus).arg() } else { 0.0 };
        // e^{−z₃/2} = cos(θ/2) e^{i(φ+ψ)/2}
        let half_sum = (-0.5 * self.z_3).exp();
        let psi = 2.0 * half_sum.arg() - phi;
        let omega = EulerAngles::new(phi, theta, psi);
        let back = gaussian_decomposition(&omega)?;
        let mismatch =
            (back.z_plus - self.z_plus).norm().max((back.z_minus - self.z_minus).norm()).max(((-0.5 * back.z_3).exp() - half_sum).norm());
        if mismatch > 1e-9 * (1.0 + t) {
            return Err(Error::NotARotation { mismatch });
        }
        Ok(omega)
    }
}

impl AntiNormalParams {
    /// `w₋ = tan(θ/2)e^{iφ}`, `w₃ = 2 ln[cos(θ/2) e^{−i(φ+ψ)/2}]`, `w₊ = −tan(θ/2)e^{iψ}`.
    pub fn from_euler(omega: &EulerAngles) -> Result<Self> {
        let (t, half) = pole_check(omega)?;
        Ok(Self {
            w_minus: Complex64::from_polar(t, omega.phi),
            w_3: 2.0 * Complex64::from_polar(half.cos(), -0.5 * (omega.phi + omega.psi)).ln(),
            w_plus: -Complex64::from_polar(t, omega.psi),
        })
    }

    pub fn reconstruct(&self, s: SpinQuantum) -> ComplexMatrix {
        let ops = spin_operators(s);
        exp_nilpotent(&ops.minus, self.w_minus) * exp_diag(&ops.s3, self.w_3) * exp_nilpotent(&ops.plus, self.w_plus)
    }
}
