//! Closed forms for `R†(Ω) S R(Ω)` and the generator `R† dR/dt`.

use num_complex::Complex64;

use super::{spin_operators, EulerAngles, SpinQuantum};
use crate::linalg::{c, ComplexMatrix, I};

/// `R†S₃R = cos θ S₃ − ½ sin θ [e^{iψ}S₊ + e^{−iψ}S₋]`.
pub fn conjugated_s3(s: SpinQuantum, omega: &EulerAngles) -> ComplexMatrix {
    let ops = spin_operators(s);
    let (st, ct) = omega.theta.sin_cos();
    let e = Complex64::from_polar(1.0, omega.psi);
    &ops.s3 * c(ct, 0.0) - (&ops.plus * e + &ops.minus * e.conj()) * c(0.5 * st, 0.0)
}

fn conjugated_ladder(s: SpinQuantum, omega: &EulerAngles, sign: f64) -> ComplexMatrix {
    let ops = spin_operators(s);
    let (st, ct) = omega.theta.sin_cos();
    let (phi, psi) = (omega.phi, omega.psi);
    &ops.s3 * Complex64::from_polar(st, sign * phi)
        + &ops.plus * Complex64::from_polar(0.5 * (ct + sign), sign * phi + psi)
        + &ops.minus * Complex64::from_polar(0.5 * (ct - sign), sign * phi - psi)
}

/// `R†S₊R = sin θ e^{iφ} S₃ + ½{(cos θ + 1)e^{i(φ+ψ)}S₊ + (cos θ − 1)e^{i(φ−ψ)}S₋}`.
pub fn conjugated_s_plus(s: SpinQuantum, omega: &EulerAngles) -> ComplexMatrix {
    conjugated_ladder(s, omega, 1.0)
}

/// `R†S₋R = sin θ e^{−iφ} S₃ + ½{(cos θ − 1)e^{i(−φ+ψ)}S₊ + (cos θ + 1)e^{−i(φ+ψ)}S₋}`.
pub fn conjugated_s_minus(s: SpinQuantum, omega: &EulerAngles) -> ComplexMatrix {
    conjugated_ladder(s, omega, -1.0)
}

/// `R†(Ω) dR(Ω)/dt` along a path with rates `(φ̇, θ̇, ψ̇)`:
///
/// `−i(φ̇ cos θ + ψ̇)S₃ + ½(iφ̇ sin θ − θ̇)e^{iψ}S₊ + ½(iφ̇ sin θ + θ̇)e^{−iψ}S₋`.
pub fn generator_identity(s: SpinQuantum, omega: &EulerAngles, rates: [f64; 3]) -> ComplexMatrix {
    let ops = spin_operators(s);
    let [pd, td, sd] = rates;
    let (st, ct) = omega.theta.sin_cos();
    let e = Complex64::from_polar(1.0, omega.psi);
    &ops.s3 * (-I * (pd * ct + sd)) + &ops.plus * ((I * (pd * st) - td) * 0.5 * e) + &ops.minus * ((I * (pd * st) + td) * 0.5 * e.conj())
}
