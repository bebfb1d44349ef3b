use std::f64::consts::TAU;

use super::{canonical_rhs, FieldProtocol, GaugeChoice, OmegaDot, Trajectory};
use crate::coherent::FiducialVector;
use crate::error::{Error, Result};
use crate::linalg::{c, expm_hermitian, ComplexMatrix, I};
use crate::su2::{spin_operators, su2_matrix, EulerAngles, SpinQuantum, Su2Matrix};

/// Classical fixed-step RK4 from `t = 0` to `t_final` on the canonical equations.
pub fn integrate_trajectory(
    fid: &FiducialVector,
    omega0: EulerAngles,
    field: &FieldProtocol,
    gauge: GaugeChoice,
    t_final: f64,
    n_steps: usize,
) -> Result<Trajectory> {
    integrate_with(|t, om| canonical_rhs(fid, om, field, t, gauge).map(|s| s.omega_dot), omega0, 0.0, t_final, n_steps)
}

/// RK4 on `Ω̇ = rhs(t, Ω)`; failures carry the time of the failing evaluation.
pub fn integrate_with(
    rhs: impl Fn(f64, &EulerAngles) -> Result<OmegaDot>,
    omega0: EulerAngles,
    t0: f64,
    t_final: f64,
    n_steps: usize,
) -> Result<Trajectory> {
    if n_steps == 0 {
        return Err(Error::InvalidArgument("n_steps must be at least 1".into()));
    }
    if t_final.partial_cmp(&t0) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::InvalidArgument(format!("t_final = {t_final} must exceed t0 = {t0}")));
    }
    let eval = |t: f64, y: [f64; 3]| -> Result<[f64; 3]> {
        rhs(t, &EulerAngles::from_array(y)).map(|d| d.as_array()).map_err(|e| Error::Integration { time: t, source: Box::new(e) })
    };
    let axpy = |y: [f64; 3], h: f64, k: [f64; 3]| [y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2]];

    let h = (t_final - t0) / n_steps as f64;
    let mut times = Vec::with_capacity(n_steps + 1);
    let mut omegas = Vec::with_capacity(n_steps + 1);
    let mut dots = Vec::with_capacity(n_steps + 1);
    let mut y = omega0.as_array();
    let mut k1 = eval(t0, y)?;
    for n in 0..n_steps {
        let t = t0 + n as f64 * h;
        times.push(t);
        omegas.push(EulerAngles::from_array(y));
        dots.push(OmegaDot::from_array(k1));
        let k2 = eval(t + 0.5 * h, axpy(y, 0.5 * h, k1))?;
        let k3 = eval(t + 0.5 * h, axpy(y, 0.5 * h, k2))?;
        let k4 = eval(t + h, axpy(y, h, k3))?;
        for i in 0..3 {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        k1 = eval(t + h, y)?;
    }
    times.push(t_final);
    omegas.push(EulerAngles::from_array(y));
    dots.push(OmegaDot::from_array(k1));
    Trajectory::new(times, omegas, dots)
}

/// `U(t, 0)` on spin-½ for the rotating field, exact:
/// `e^{−iωtS₃} exp(−i(Ĥ(0) − ħωS₃)t/ħ)`.
pub(crate) fn spin_half_evolution(field: &FieldProtocol, t: f64) -> Su2Matrix {
    let u = exact_evolution_matrix(SpinQuantum::from_twice(1), field, t);
    Su2Matrix::new(u[(0, 0)], u[(0, 1)], u[(1, 0)], u[(1, 1)])
}

/// `U(t, 0)` in the spin-`s` irrep for the rotating field.
pub(crate) fn exact_evolution_matrix(s: SpinQuantum, field: &FieldProtocol, t: f64) -> ComplexMatrix {
    let ops = spin_operators(s);
    let rotating = field.hamiltonian_matrix(s, 0.0) - &ops.s3 * c(field.hbar * field.drive_omega, 0.0);
    let frame = expm_hermitian(&(&ops.s3 * c(field.drive_omega, 0.0)), t);
    frame * expm_hermitian(&rotating, t / field.hbar)
}

fn unwrap_near(x: f64, reference: f64) -> f64 {
    x - TAU * ((x - reference) / TAU).round()
}

/// Path `Ω(t)` of the exactly evolved coherent state `U(t,0)R(Ω₀)|Ψ₀⟩`.
///
/// A coherent state stays coherent under `Ĥ = −μB·Ŝ`, so this is a solution of
/// the Schrödinger equation for every fiducial, including those whose canonical
/// matrix vanishes identically.
pub fn precession_trajectory(omega0: EulerAngles, field: &FieldProtocol, t_final: f64, n_steps: usize) -> Result<Trajectory> {
    if n_steps == 0 {
        return Err(Error::InvalidArgument("n_steps must be at least 1".into()));
    }
    let r0 = su2_matrix(&omega0);
    let half = SpinQuantum::from_twice(1);
    let mut prev = omega0;
    let mut times = Vec::with_capacity(n_steps + 1);
    let mut omegas = Vec::with_capacity(n_steps + 1);
    let mut dots = Vec::with_capacity(n_steps + 1);
    for k in 0..=n_steps {
        let t = t_final * k as f64 / n_steps as f64;
        let r = spin_half_evolution(field, t) * r0;
        let (raw, degenerate) = EulerAngles::from_su2(&r);
        if degenerate {
            return Err(Error::Integration { time: t, source: Box::new(Error::SingularReducedSystem { det: raw.theta.sin() }) });
        }
        let om = EulerAngles::new(unwrap_near(raw.phi, prev.phi), raw.theta, unwrap_near(raw.psi, prev.psi));
        // R†Ṙ = −(i/ħ) R†ĤR, read off through the generator identity
        let h = field.hamiltonian_matrix(half, t);
        let rd = ComplexMatrix::from_fn(2, 2, |i, j| r[(i, j)]);
        let x = rd.adjoint() * h * &rd * (-I / field.hbar);
        let u = (2.0 * I * x[(0, 0)]).re;
        let w = 2.0 * x[(0, 1)] * num_complex::Complex64::from_polar(1.0, -om.psi);
        let (st, ct) = om.theta.sin_cos();
        let phi_dot = w.im / st;
        dots.push(OmegaDot::new(phi_dot, -w.re, u - phi_dot * ct));
        times.push(t);
        omegas.push(om);
        prev = om;
    }
    Trajectory::new(times, omegas, dots)
}
