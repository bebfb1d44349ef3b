use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix2, Matrix3, Vector2, Vector3};
use serde::{Deserialize, Serialize};

use super::{ClassicalHamiltonian, FieldHamiltonian, FieldProtocol, OmegaDot};
use crate::coherent::{a_coefficients, FiducialVector};
use crate::error::{Error, Result};
use crate::su2::EulerAngles;

/// Reduced systems with `|det|` below this are rejected.
pub const SINGULAR_DET: f64 = 1e-12;
/// Relative tolerance on the consistency residual.
pub const CONSISTENCY_TOL: f64 = 1e-8;

/// Prescription removing the null direction of the canonical matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GaugeChoice {
    /// `ψ̇ = 0`.
    PsiFrozen,
    /// `ψ̇ = −φ̇`.
    PsiLocked,
    /// Minimum-norm solution through the rank-2 pseudo-inverse.
    LeastNorm,
}

impl FromStr for GaugeChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "psi-frozen" => Ok(Self::PsiFrozen),
            "psi-locked" => Ok(Self::PsiLocked),
            "least-norm" => Ok(Self::LeastNorm),
            other => Err(Error::InvalidArgument(format!("unknown gauge `{other}`"))),
        }
    }
}

impl fmt::Display for GaugeChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::PsiFrozen => "psi-frozen",
            Self::PsiLocked => "psi-locked",
            Self::LeastNorm => "least-norm",
        })
    }
}

/// Rates solving the gauge-fixed canonical equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalSolution {
    pub omega_dot: OmegaDot,
    /// Violation of the left-null-vector consistency condition, in Hamiltonian units.
    pub residual: f64,
    /// Determinant of the reduced 2×2 system that was solved.
    pub reduced_det: f64,
}

/// `M = [[a, 0, b], [0, a, −c], [c, b, 0]]` acting on `(φ̇, θ̇, ψ̇)`.
pub fn canonical_matrix(fid: &FiducialVector, omega: &EulerAngles) -> Matrix3<f64> {
    let a = a_coefficients(fid, omega.psi);
    let (st, ct) = omega.theta.sin_cos();
    let (aa, b, c) = (a.a0 * st + a.a1 * ct, a.a1, a.a4 * st);
    Matrix3::new(aa, 0.0, b, 0.0, aa, -c, c, b, 0.0)
}

/// Canonical rates for the field Hamiltonian.
pub fn canonical_rhs(
    fid: &FiducialVector,
    omega: &EulerAngles,
    field: &FieldProtocol,
    t: f64,
    gauge: GaugeChoice,
) -> Result<CanonicalSolution> {
    canonical_rhs_with(&FieldHamiltonian { fiducial: fid, field }, fid, omega, t, gauge, field.hbar)
}

/// Canonical rates for an arbitrary classical Hamiltonian.
pub fn canonical_rhs_with(
    ham: &dyn ClassicalHamiltonian,
    fid: &FiducialVector,
    omega: &EulerAngles,
    t: f64,
    gauge: GaugeChoice,
    hbar: f64,
) -> Result<CanonicalSolution> {
    let m = canonical_matrix(fid, omega);
    let [dphi, dtheta, dpsi] = ham.gradient(omega, t);
    let rhs = Vector3::new(-dtheta, dphi, dpsi) / hbar;
    let (a, b, c) = (m[(0, 0)], m[(0, 2)], m[(2, 0)]);

    let residual = if a.abs() > 1e-9 {
        (dpsi - (c / a) * (-dtheta) - (b / a) * dphi).abs()
    } else {
        let n = (a * a + b * b + c * c).sqrt();
        if n == 0.0 {
            0.0
        } else {
            (c * -dtheta + b * dphi - a * dpsi).abs() / n
        }
    };
    let scale = 1.0 + dphi.abs() + dtheta.abs() + dpsi.abs();
    if residual > CONSISTENCY_TOL * scale {
        return Err(Error::InconsistentSystem { residual });
    }

    let (rates, reduced_det) = match gauge {
        GaugeChoice::PsiFrozen => {
            let (x, det) = solve_reduced(&m.column(0).into(), &m.column(1).into(), &rhs)?;
            ([x[0], x[1], 0.0], det)
        }
        GaugeChoice::PsiLocked => {
            let col_phi: Vector3<f64> = m.column(0) - m.column(2);
            let (x, det) = solve_reduced(&col_phi, &m.column(1).into(), &rhs)?;
            ([x[0], x[1], -x[0]], det)
        }
        GaugeChoice::LeastNorm => least_norm(&m, &rhs)?,
    };
    Ok(CanonicalSolution { omega_dot: OmegaDot::from_array(rates), residual, reduced_det })
}

/// Solves the 3×2 system `[c0 c1] x = rhs` on the pair of rows with the largest `|det|`.
fn solve_reduced(c0: &Vector3<f64>, c1: &Vector3<f64>, rhs: &Vector3<f64>) -> Result<(Vector2<f64>, f64)> {
    let mut best = (0usize, 1usize, 0.0f64);
    for &(i, j) in &[(0, 1), (0, 2), (1, 2)] {
        let det = c0[i] * c1[j] - c0[j] * c1[i];
        if det.abs() > best.2.abs() {
            best = (i, j, det);
        }
    }
    let (i, j, det) = best;
    if det.abs() < SINGULAR_DET {
        return Err(Error::SingularReducedSystem { det });
    }
    let sys = Matrix2::new(c0[i], c1[i], c0[j], c1[j]);
    let x = sys.try_inverse().ok_or(Error::SingularReducedSystem { det })? * Vector2::new(rhs[i], rhs[j]);
    Ok((x, det))
}

fn least_norm(m: &Matrix3<f64>, rhs: &Vector3<f64>) -> Result<([f64; 3], f64)> {
    let svd = m.svd(true, true);
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&x, &y| svd.singular_values[y].total_cmp(&svd.singular_values[x]));
    let det = svd.singular_values[idx[0]] * svd.singular_values[idx[1]];
    if det < SINGULAR_DET {
        return Err(Error::SingularReducedSystem { det });
    }
    let u = svd.u.expect("u requested");
    let vt = svd.v_t.expect("v_t requested");
    let mut x = Vector3::zeros();
    for &k in &idx[..2] {
        let coef = u.column(k).dot(rhs) / svd.singular_values[k];
        x += vt.row(k).transpose() * coef;
    }
    Ok(([x[0], x[1], x[2]], det))
}
