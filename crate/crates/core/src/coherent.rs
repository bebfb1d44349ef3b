//! Coherent states `|Ω⟩ = R(Ω)|Ψ₀⟩` over an arbitrary normalized fiducial vector.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, inner, max_abs_diff, sandwich, ComplexMatrix, ComplexVector};
use crate::quadrature::QuadratureSpec;
use crate::su2::{
    compose_rotations, compose_three, rotation_matrix, spin_operators, wigner_small_d, EulerAngles, GaussianParams, SpinQuantum,
};

/// Threshold below which `A₀` and `⟨Ψ₀|S₊|Ψ₀⟩` count as zero for [`FiducialVector::is_inert`].
pub const INERT_EPS: f64 = 1e-14;

/// Normalized fiducial vector `|Ψ₀⟩ = Σ c_m |m⟩`, coefficients ordered `m = +s … −s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiducialVector {
    s: SpinQuantum,
    coeffs: Vec<Complex64>,
    applied_scale: f64,
}

impl FiducialVector {
    /// Normalizes `coeffs`; the factor used is kept as [`Self::applied_scale`].
    pub fn new(s: SpinQuantum, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != s.dim() {
            return Err(Error::InvalidFiducial(format!("expected {} coefficients for s = {s}, got {}", s.dim(), coeffs.len())));
        }
        if coeffs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidFiducial("non-finite coefficient".into()));
        }
        let norm = coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidFiducial("zero vector".into()));
        }
        let scale = 1.0 / norm;
        Ok(Self { s, coeffs: coeffs.into_iter().map(|z| z * scale).collect(), applied_scale: scale })
    }

    pub fn from_real(s: SpinQuantum, coeffs: &[f64]) -> Result<Self> {
        Self::new(s, coeffs.iter().map(|&x| c(x, 0.0)).collect())
    }

    /// The basis vector `|m⟩` with `m = two_m / 2`.
    pub fn pure(s: SpinQuantum, two_m: i32) -> Result<Self> {
        let idx = s.index_of(two_m).ok_or_else(|| Error::InvalidFiducial(format!("m = {two_m}/2 is not a weight of s = {s}")))?;
        let mut coeffs = vec![c(0.0, 0.0); s.dim()];
        coeffs[idx] = c(1.0, 0.0);
        Self::new(s, coeffs)
    }

    /// `√(2/3)|1⟩ + √(1/3)|−1⟩`.
    pub fn spin1_two_thirds() -> Self {
        Self::from_real(SpinQuantum::integer(1), &[(2.0f64 / 3.0).sqrt(), 0.0, (1.0f64 / 3.0).sqrt()]).expect("valid preset")
    }

    /// `(|1⟩ + |−1⟩)/√2`.
    pub fn spin1_equal_pair() -> Self {
        Self::from_real(SpinQuantum::integer(1), &[1.0, 0.0, 1.0]).expect("valid preset")
    }

    /// `(|1⟩ + |0⟩ + |−1⟩)/√3`.
    pub fn spin1_uniform() -> Self {
        Self::from_real(SpinQuantum::integer(1), &[1.0, 1.0, 1.0]).expect("valid preset")
    }

    pub fn spin(&self) -> SpinQuantum {
        self.s
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Factor by which the supplied coefficients were multiplied.
    pub fn applied_scale(&self) -> f64 {
        self.applied_scale
    }

    /// `c_m` for `m = two_m / 2`; zero outside the weight range.
    pub fn coeff(&self, two_m: i32) -> Complex64 {
        self.s.index_of(two_m).map_or(c(0.0, 0.0), |i| self.coeffs[i])
    }

    pub fn vector(&self) -> ComplexVector {
        ComplexVector::from_column_slice(&self.coeffs)
    }

    /// `A₀ = Σ m|c_m|²`.
    pub fn a0(&self) -> f64 {
        self.coeffs.iter().enumerate().map(|(i, z)| self.s.m_at(i) * z.norm_sqr()).sum()
    }

    /// `P = ⟨Ψ₀|S₊|Ψ₀⟩ = Σ f(s,m) c*_m c_{m−1}`.
    pub fn ladder_sum(&self) -> Complex64 {
        (0..self.coeffs.len().saturating_sub(1))
            .map(|i| {
                let two_m = self.s.two_s() as i32 - 2 * i as i32;
                self.coeffs[i].conj() * self.coeffs[i + 1] * self.s.ladder(two_m)
            })
            .sum()
    }

    /// `A₀ = 0` and `P = 0`: every A-coefficient, the Lagrangian one-form and the
    /// field Hamiltonian vanish identically.
    pub fn is_inert(&self) -> bool {
        self.a0().abs() < INERT_EPS && self.ladder_sum().norm() < INERT_EPS
    }
}

/// `|Ω⟩` with its amplitudes on `{|m′⟩}` computed at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentState {
    fiducial: FiducialVector,
    omega: EulerAngles,
    amplitudes: ComplexVector,
}

impl CoherentState {
    /// Amplitudes by matrix application `R(Ω)·c`.
    pub fn new(fiducial: &FiducialVector, omega: EulerAngles) -> Self {
        let amplitudes = rotation_matrix(fiducial.spin(), &omega) * fiducial.vector();
        Self { fiducial: fiducial.clone(), omega, amplitudes }
    }

    pub fn fiducial(&self) -> &FiducialVector {
        &self.fiducial
    }

    pub fn omega(&self) -> EulerAngles {
        self.omega
    }

    pub fn amplitudes(&self) -> &ComplexVector {
        &self.amplitudes
    }

    pub fn spin(&self) -> SpinQuantum {
        self.fiducial.spin()
    }
}

/// Amplitudes from the component sum `Σ_m c_m e^{−i(m′φ + mψ)} r_{m′m}(θ)`.
pub fn component_amplitudes(fid: &FiducialVector, omega: &EulerAngles) -> ComplexVector {
    let s = fid.spin();
    let d = wigner_small_d(s, omega.theta);
    ComplexVector::from_fn(s.dim(), |row, _| {
        let mp = s.m_at(row);
        fid.coeffs()
            .iter()
            .enumerate()
            .map(|(col, cm)| {
                let m = s.m_at(col);
                cm * Complex64::from_polar(d[(row, col)], -(mp * omega.phi + m * omega.psi))
            })
            .sum()
    })
}

/// `⟨bra|ket⟩` through the composed angles of `R(Ω₂)⁻¹R(Ω₁)`.
pub fn overlap(bra: &CoherentState, ket: &CoherentState) -> Result<Complex64> {
    check_spin(bra.spin(), ket.spin())?;
    let comp = compose_rotations(&bra.omega.inverse(), &ket.omega);
    let r = rotation_matrix(bra.spin(), &comp.angles);
    Ok(sandwich(&bra.fiducial.vector(), &r, &ket.fiducial.vector()))
}

/// `⟨bra|ket⟩` as the inner product of the cached amplitudes.
pub fn overlap_direct(bra: &CoherentState, ket: &CoherentState) -> Result<Complex64> {
    check_spin(bra.spin(), ket.spin())?;
    Ok(inner(&bra.amplitudes, &ket.amplitudes))
}

fn check_spin(left: SpinQuantum, right: SpinQuantum) -> Result<()> {
    if left != right {
        return Err(Error::SpinMismatch { left: left.two_s(), right: right.two_s() });
    }
    Ok(())
}

/// `(2s+1)/(8π²) Σ_nodes w |Ω⟩⟨Ω|`.
pub fn resolution_operator(fid: &FiducialVector, quad: &QuadratureSpec) -> ComplexMatrix {
    let s = fid.spin();
    let dim = s.dim();
    let norm = dim as f64 / (8.0 * PI * PI);
    let mut acc = ComplexMatrix::zeros(dim, dim);
    for (omega, w) in quad.grid() {
        let v = CoherentState::new(fid, omega).amplitudes;
        acc += &v * v.adjoint() * c(w * norm, 0.0);
    }
    acc
}

/// `‖(2s+1)/(8π²) ∫ |Ω⟩⟨Ω| dΩ − 1‖∞` on the quadrature grid.
pub fn resolution_residual(fid: &FiducialVector, quad: &QuadratureSpec) -> f64 {
    let dim = fid.spin().dim();
    max_abs_diff(&resolution_operator(fid, quad), &ComplexMatrix::identity(dim, dim))
}

/// `A₀`, `A₁(ψ)`, `A₄(ψ)` of a fiducial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ACoefficients {
    pub a0: f64,
    pub a1: f64,
    pub a4: f64,
}

/// `A₁ + iA₄ = e^{iψ} Σ f(s,m) c*_m c_{m−1}`.
pub fn a_coefficients(fid: &FiducialVector, psi: f64) -> ACoefficients {
    let p = Complex64::from_polar(1.0, psi) * fid.ladder_sum();
    ACoefficients { a0: fid.a0(), a1: p.re, a4: p.im }
}

/// `A₂ = ½[(1 + cos θ)e^{i(φ+ψ)}P − (1 − cos θ)e^{i(φ−ψ)}P*]`.
pub fn a_two(fid: &FiducialVector, omega: &EulerAngles) -> Complex64 {
    let p = fid.ladder_sum();
    let ct = omega.theta.cos();
    0.5 * ((1.0 + ct) * Complex64::from_polar(1.0, omega.phi + omega.psi) * p
        - (1.0 - ct) * Complex64::from_polar(1.0, omega.phi - omega.psi) * p.conj())
}

/// `⟨S₃⟩` and `⟨S₊⟩` in a coherent state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinExpectation {
    pub s3: f64,
    pub s_plus: Complex64,
}

impl SpinExpectation {
    pub fn s_minus(&self) -> Complex64 {
        self.s_plus.conj()
    }
}

/// `⟨S₃⟩ = A₀cos θ − A₁sin θ`, `⟨S₊⟩ = A₀sin θ e^{iφ} + A₂`.
pub fn expectation_spin_at(fid: &FiducialVector, omega: &EulerAngles) -> SpinExpectation {
    let a = a_coefficients(fid, omega.psi);
    let (st, ct) = omega.theta.sin_cos();
    SpinExpectation { s3: a.a0 * ct - a.a1 * st, s_plus: Complex64::from_polar(a.a0 * st, omega.phi) + a_two(fid, omega) }
}

pub fn expectation_spin(state: &CoherentState) -> SpinExpectation {
    expectation_spin_at(&state.fiducial, &state.omega)
}

/// `⟨Ψ|S₃|Ψ⟩`, `⟨Ψ|S₊|Ψ⟩` by direct sandwich.
pub fn expectation_spin_direct(state: &CoherentState) -> SpinExpectation {
    let ops = spin_operators(state.spin());
    let v = &state.amplitudes;
    SpinExpectation { s3: sandwich(v, &ops.s3, v).re, s_plus: sandwich(v, &ops.plus, v) }
}

/// `⟨Ω₂| exp(z₊S₊) exp(z₃S₃) exp(z₋S₋) |Ω₁⟩` for arbitrary complex `z`.
pub fn generating_function(omega2: &EulerAngles, z: &GaussianParams, omega1: &EulerAngles, fid: &FiducialVector) -> Complex64 {
    let s = fid.spin();
    let bra = CoherentState::new(fid, *omega2);
    let ket = CoherentState::new(fid, *omega1);
    sandwich(&bra.amplitudes, &z.reconstruct(s), &ket.amplitudes)
}

/// Same quantity through `⟨Ψ₀|R(Ω″)|Ψ₀⟩` with `R(Ω″) = R(Ω₂)⁻¹R(Ω(z))R(Ω₁)`.
///
/// Requires `z` to be the parameter set of a rotation.
pub fn generating_function_euler(
    omega2: &EulerAngles,
    z: &GaussianParams,
    omega1: &EulerAngles,
    fid: &FiducialVector,
) -> Result<Complex64> {
    let middle = z.to_euler()?;
    let comp = compose_three(&omega2.inverse(), &middle, omega1);
    let v = fid.vector();
    Ok(sandwich(&v, &rotation_matrix(fid.spin(), &comp.angles), &v))
}
