//! Exact spin-`s` representation matrices of SU(2) and Euler-angle group operations.
//!
//! Conventions: `R(φ, θ, ψ) = exp(−iφS₃) exp(−iθS₂) exp(−iψS₃)` and matrices
//! are indexed by `m = +s … −s` (descending), so for `s = 1/2` the layout is
//! the familiar
//!
//! ```text
//! [ cos(θ/2) e^{−i(φ+ψ)/2}   −sin(θ/2) e^{−i(φ−ψ)/2} ]
//! [ sin(θ/2) e^{ i(φ−ψ)/2}    cos(θ/2) e^{ i(φ+ψ)/2} ]
//! ```

mod euler;
mod gaussian;
mod identities;
mod operators;
mod spin;

pub use euler::{compose_rotations, compose_three, su2_matrix, Composition, EulerAngles, Su2Matrix, GIMBAL_EPS};
pub use gaussian::{gaussian_decomposition, AntiNormalParams, GaussianParams};
pub use identities::{conjugated_s3, conjugated_s_minus, conjugated_s_plus, generator_identity};
pub use operators::{spin_operators, SpinOperators};
pub use spin::SpinQuantum;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::linalg::{c, ComplexMatrix};
use crate::quadrature::QuadratureSpec;

fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

/// Wigner's small-d matrix `r(θ) = exp(−iθS₂)`, real and orthogonal.
///
/// Entry `(i, j)` is `⟨m_i| exp(−iθS₂) |m_j⟩` with `m` descending. Uses the
/// factorial-sum formula with log-factorial prefactors.
pub fn wigner_small_d(s: SpinQuantum, theta: f64) -> DMatrix<f64> {
    let d = s.dim();
    let two_j = s.two_s() as i64;
    let lf = ln_factorials(two_j as usize + 1);
    let (sh, ch) = (0.5 * theta).sin_cos();
    let mut out = DMatrix::zeros(d, d);
    for (i, mp) in s.twice_m_values().enumerate() {
        for (k_col, m) in s.twice_m_values().enumerate() {
            let (mp, m) = (mp as i64, m as i64);
            let jpmp = ((two_j + mp) / 2) as usize;
            let jmmp = ((two_j - mp) / 2) as usize;
            let jpm = ((two_j + m) / 2) as usize;
            let jmm = ((two_j - m) / 2) as usize;
            let dm = (mp - m) / 2; // m' − m, integer
            let prefactor = 0.5 * (lf[jpmp] + lf[jmmp] + lf[jpm] + lf[jmm]);
            let k_min = 0.max(-dm);
            let k_max = (jpm as i64).min(jmmp as i64);
            let mut sum = 0.0;
            for k in k_min..=k_max {
                let denom = lf[(jpm as i64 - k) as usize] + lf[k as usize] + lf[(dm + k) as usize] + lf[(jmmp as i64 - k) as usize];
                let sign = if (dm + k).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                let cos_pow = (two_j - 2 * k - dm) as i32;
                let sin_pow = (dm + 2 * k) as i32;
                sum += sign * (prefactor - denom).exp() * ch.powi(cos_pow) * sh.powi(sin_pow);
            }
            out[(i, k_col)] = sum;
        }
    }
    out
}

/// `R^{(s)}(Ω)` with entries `e^{−iφm} r_{mm'}(θ) e^{−iψm'}`.
pub fn rotation_matrix(s: SpinQuantum, omega: &EulerAngles) -> ComplexMatrix {
    let r = wigner_small_d(s, omega.theta);
    let d = s.dim();
    ComplexMatrix::from_fn(d, d, |i, j| {
        let phase = -(omega.phi * s.m_at(i) + omega.psi * s.m_at(j));
        Complex64::from_polar(1.0, phase) * r[(i, j)]
    })
}

/// Largest deviation of the quadrature-evaluated orthogonality integrals
/// `∫ R*_{mm'} R_{nn'} dΩ` from `8π²/(2s+1) δ_{mn} δ_{m'n'}`.
pub fn orthogonality_residual(s: SpinQuantum, quad: &QuadratureSpec) -> f64 {
    let d = s.dim();
    let d2 = d * d;
    // accumulate the Gram matrix of the flattened R entries
    let mut gram = ComplexMatrix::zeros(d2, d2);
    for (omega, w) in quad.grid() {
        let r = rotation_matrix(s, &omega);
        let flat: Vec<Complex64> = r.iter().copied().collect();
        for a in 0..d2 {
            let ca = flat[a].conj() * w;
            for b in 0..d2 {
                gram[(a, b)] += ca * flat[b];
            }
        }
    }
    let norm = 8.0 * std::f64::consts::PI.powi(2) / d as f64;
    let mut worst: f64 = 0.0;
    for a in 0..d2 {
        for b in 0..d2 {
            let expected = if a == b { c(norm, 0.0) } else { c(0.0, 0.0) };
            worst = worst.max((gram[(a, b)] - expected).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs_diff, unitarity_defect};
    use nalgebra::SymmetricEigen;
    use std::f64::consts::PI;

    /// exp(−iθS₂) by diagonalizing S₂.
    fn small_d_oracle(s: SpinQuantum, theta: f64) -> ComplexMatrix {
        let s2 = spin_operators(s).s2;
        let eig = SymmetricEigen::new(s2);
        let v = &eig.eigenvectors;
        let ph = nalgebra::DVector::from_iterator(s.dim(), eig.eigenvalues.iter().map(|&l| Complex64::from_polar(1.0, -theta * l)));
        v * ComplexMatrix::from_diagonal(&ph) * v.adjoint()
    }

    #[test]
    fn spin_half_small_d() {
        let th = 1.234;
        let r = wigner_small_d(SpinQuantum::from_twice(1), th);
        let (s, c) = (0.5 * th).sin_cos();
        assert!((r[(0, 0)] - c).abs() < 1e-15);
        assert!((r[(0, 1)] + s).abs() < 1e-15);
        assert!((r[(1, 0)] - s).abs() < 1e-15);
        assert!((r[(1, 1)] - c).abs() < 1e-15);
    }

    #[test]
    fn identity_at_zero() {
        for two_s in 0..=8 {
            let s = SpinQuantum::from_twice(two_s);
            let r = wigner_small_d(s, 0.0);
            assert!((r - DMatrix::identity(s.dim(), s.dim())).abs().max() < 1e-15);
        }
    }

    #[test]
    fn spin_one_quarter_turn_matches_eigen_oracle() {
        let s = SpinQuantum::integer(1);
        let ours = wigner_small_d(s, PI / 2.0).map(|x| c(x, 0.0));
        assert!(max_abs_diff(&ours, &small_d_oracle(s, PI / 2.0)) < 1e-12);
    }

    #[test]
    fn small_d_matches_eigen_oracle_across_spins() {
        for two_s in 0..=10 {
            let s = SpinQuantum::from_twice(two_s);
            for &th in &[0.1, 0.9, 2.0, 3.0, PI] {
                let ours = wigner_small_d(s, th).map(|x| c(x, 0.0));
                assert!(max_abs_diff(&ours, &small_d_oracle(s, th)) < 1e-12, "2s={two_s} θ={th}");
            }
        }
    }

    #[test]
    fn small_d_is_orthogonal() {
        for two_s in 0..=7 {
            let s = SpinQuantum::from_twice(two_s);
            let r = wigner_small_d(s, 2.2);
            let err = (r.transpose() * &r - DMatrix::identity(s.dim(), s.dim())).abs().max();
            assert!(err < 1e-13);
        }
    }

    #[test]
    fn spin_half_rotation_matrix_closed_form() {
        let (phi, th, psi) = (0.4, 1.1, -2.3);
        let r = rotation_matrix(SpinQuantum::from_twice(1), &EulerAngles::new(phi, th, psi));
        let (s, co) = (0.5 * th).sin_cos();
        let e = |x: f64| Complex64::from_polar(1.0, x);
        assert!((r[(0, 0)] - e(-0.5 * (phi + psi)) * co).norm() < 1e-15);
        assert!((r[(0, 1)] + e(-0.5 * (phi - psi)) * s).norm() < 1e-15);
        assert!((r[(1, 0)] - e(0.5 * (phi - psi)) * s).norm() < 1e-15);
        assert!((r[(1, 1)] - e(0.5 * (phi + psi)) * co).norm() < 1e-15);
    }

    #[test]
    fn rotation_matches_product_of_exponentials() {
        let s = SpinQuantum::from_twice(3);
        let ops = spin_operators(s);
        let om = EulerAngles::new(0.7, 2.1, -1.3);
        let oracle = (&ops.s3 * c(0.0, -om.phi)).exp() * (&ops.s2 * c(0.0, -om.theta)).exp() * (&ops.s3 * c(0.0, -om.psi)).exp();
        assert!(max_abs_diff(&rotation_matrix(s, &om), &oracle) < 1e-12);
    }

    #[test]
    fn inverse_via_reversed_angles() {
        let s = SpinQuantum::from_twice(4);
        let om = EulerAngles::new(1.0, 0.6, 2.5);
        let prod = rotation_matrix(s, &om) * rotation_matrix(s, &om.inverse());
        assert!(max_abs_diff(&prod, &ComplexMatrix::identity(5, 5)) < 1e-12);
        assert!(unitarity_defect(&rotation_matrix(s, &om)) < 1e-13);
    }

    #[test]
    fn orthogonality_trivial_rep() {
        let q = QuadratureSpec::uniform(2).unwrap();
        assert!(orthogonality_residual(SpinQuantum::integer(0), &q) < 1e-12);
    }

    #[test]
    fn orthogonality_spin_half() {
        let q = QuadratureSpec::uniform(8).unwrap();
        assert!(orthogonality_residual(SpinQuantum::from_twice(1), &q) < 1e-10);
    }

    #[test]
    fn orthogonality_under_resolved_grid_fails() {
        // one φ node cannot separate different m
        let q = QuadratureSpec::new(8, 1, 8).unwrap();
        assert!(orthogonality_residual(SpinQuantum::integer(1), &q) > 1.0);
    }
}
