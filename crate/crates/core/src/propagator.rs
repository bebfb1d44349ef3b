//! Time-ordered propagators between coherent states and the resolution-of-unity
//! insertion identity that underlies time slicing.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coherent::{CoherentState, FiducialVector};
use crate::dynamics::FieldProtocol;
use crate::error::{Error, Result};
use crate::linalg::{c, expm_hermitian, inner, sandwich, ComplexMatrix, ComplexVector};
use crate::quadrature::QuadratureSpec;
use crate::su2::{EulerAngles, SpinQuantum};

/// Amplitude `K(Ω_f, t_f; Ω_i, t_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropagatorResult {
    pub amplitude: Complex64,
    pub n_slices: usize,
    pub insertion_residual: Option<f64>,
}

/// `Π_j exp(−iĤ(t_j)δt/ħ)` with midpoint times, latest slice leftmost.
pub fn sliced_evolution(s: SpinQuantum, field: &FieldProtocol, t_i: f64, t_f: f64, n_slices: usize) -> Result<ComplexMatrix> {
    if n_slices == 0 {
        return Err(Error::InvalidArgument("n_slices must be at least 1".into()));
    }
    let dt = (t_f - t_i) / n_slices as f64;
    let d = s.dim();
    let mut u = ComplexMatrix::identity(d, d);
    for j in 0..n_slices {
        let tm = t_i + (j as f64 + 0.5) * dt;
        u = expm_hermitian(&field.hamiltonian_matrix(s, tm), dt / field.hbar) * u;
    }
    Ok(u)
}

/// `U(t_f, t_i)` in closed form through the co-rotating frame.
pub fn exact_evolution(s: SpinQuantum, field: &FieldProtocol, t_i: f64, t_f: f64) -> ComplexMatrix {
    let uf = crate::dynamics::exact_evolution_matrix(s, field, t_f);
    let ui = crate::dynamics::exact_evolution_matrix(s, field, t_i);
    uf * ui.adjoint()
}

/// `⟨Ω_f| Π exp(−iĤ(t_j)δt/ħ) |Ω_i⟩`.
pub fn exact_propagator(
    fid: &FiducialVector,
    omega_f: &EulerAngles,
    omega_i: &EulerAngles,
    field: &FieldProtocol,
    t_i: f64,
    t_f: f64,
    n_slices: usize,
) -> Result<PropagatorResult> {
    let u = sliced_evolution(fid.spin(), field, t_i, t_f, n_slices)?;
    let bra = CoherentState::new(fid, *omega_f);
    let ket = CoherentState::new(fid, *omega_i);
    Ok(PropagatorResult { amplitude: sandwich(bra.amplitudes(), &u, ket.amplitudes()), n_slices, insertion_residual: None })
}

/// Pairwise sum for bit-stable reductions independent of grid size.
fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    if values.len() <= 8 {
        return values.iter().sum();
    }
    let (a, b) = values.split_at(values.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// `|K(f; i) − (2s+1)/(8π²) ∫dΩ K(f; Ω, t_mid) K(Ω, t_mid; i)|` with exact
/// half-propagators.
#[allow(clippy::too_many_arguments)]
pub fn insertion_identity_residual(
    fid: &FiducialVector,
    omega_f: &EulerAngles,
    omega_i: &EulerAngles,
    field: &FieldProtocol,
    t_i: f64,
    t_mid: f64,
    t_f: f64,
    quad: &QuadratureSpec,
) -> f64 {
    let s = fid.spin();
    let norm = s.dim() as f64 / (8.0 * PI * PI);
    let late = exact_evolution(s, field, t_mid, t_f);
    let early = exact_evolution(s, field, t_i, t_mid);
    let bra = CoherentState::new(fid, *omega_f);
    let ket = CoherentState::new(fid, *omega_i);
    let direct = sandwich(bra.amplitudes(), &(&late * &early), ket.amplitudes());

    let left: ComplexVector = late.adjoint() * bra.amplitudes();
    let right: ComplexVector = &early * ket.amplitudes();
    let terms: Vec<Complex64> = quad
        .grid()
        .into_iter()
        .map(|(om, w)| {
            let mid = CoherentState::new(fid, om);
            inner(&left, mid.amplitudes()) * inner(mid.amplitudes(), &right) * (w * norm)
        })
        .collect();
    (direct - pairwise_sum(&terms)).norm()
}

/// `∫∫ dΩ_f dΩ_i ⟨f|Ω_f⟩ K(Ω_f, t_f; Ω_i, t_i) ⟨Ω_i|i⟩` on the quadrature grid.
///
/// The double sum factorizes into `⟨f|P U P|i⟩` with `P` the quadrature
/// resolution operator.
pub fn transition_amplitude(
    fid: &FiducialVector,
    bra_state: &ComplexVector,
    ket_state: &ComplexVector,
    field: &FieldProtocol,
    t_i: f64,
    t_f: f64,
    quad: &QuadratureSpec,
) -> Result<Complex64> {
    let s = fid.spin();
    check_state(s, bra_state)?;
    check_state(s, ket_state)?;
    let norm = s.dim() as f64 / (8.0 * PI * PI);
    let mut bra_proj = ComplexVector::zeros(s.dim());
    let mut ket_proj = ComplexVector::zeros(s.dim());
    for (om, w) in quad.grid() {
        let v = CoherentState::new(fid, om);
        let v = v.amplitudes();
        bra_proj += v * (inner(v, bra_state) * (w * norm));
        ket_proj += v * (inner(v, ket_state) * (w * norm));
    }
    Ok(sandwich(&bra_proj, &exact_evolution(s, field, t_i, t_f), &ket_proj))
}

/// `⟨f|U(t_f, t_i)|i⟩` directly.
pub fn transition_amplitude_direct(
    bra_state: &ComplexVector,
    ket_state: &ComplexVector,
    s: SpinQuantum,
    field: &FieldProtocol,
    t_i: f64,
    t_f: f64,
) -> Result<Complex64> {
    check_state(s, bra_state)?;
    check_state(s, ket_state)?;
    Ok(sandwich(bra_state, &exact_evolution(s, field, t_i, t_f), ket_state))
}

fn check_state(s: SpinQuantum, v: &ComplexVector) -> Result<()> {
    if v.len() != s.dim() {
        return Err(Error::InvalidArgument(format!("state has {} components, expected {}", v.len(), s.dim())));
    }
    let n = v.norm();
    if (n - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidArgument(format!("state is not normalized (norm {n})")));
    }
    Ok(())
}

/// `exp(iμmB(t_f − t_i)/ħ)`, the static-`z` amplitude for `|m⟩` at the identity.
pub fn static_pure_amplitude(m: f64, field: &FieldProtocol, t_i: f64, t_f: f64) -> Complex64 {
    Complex64::from_polar(1.0, field.mu * m * field.b * (t_f - t_i) / field.hbar) * c(1.0, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;

    #[test]
    fn zero_field_gives_overlap() {
        let f = FiducialVector::spin1_uniform();
        let (a, b) = (EulerAngles::new(0.1, 0.5, 0.2), EulerAngles::new(1.0, 1.2, -0.3));
        let k = exact_propagator(&f, &a, &b, &FieldProtocol::default(), 0.0, 2.0, 3).unwrap();
        let ov = crate::coherent::overlap_direct(&CoherentState::new(&f, a), &CoherentState::new(&f, b)).unwrap();
        assert!((k.amplitude - ov).norm() < 1e-14);
    }

    #[test]
    fn static_pure_state_phase() {
        let s = SpinQuantum::integer(1);
        let f = FiducialVector::pure(s, 2).unwrap();
        let field = FieldProtocol::new(0.0, 0.8, 0.0).with_mu(1.4);
        let k = exact_propagator(&f, &EulerAngles::IDENTITY, &EulerAngles::IDENTITY, &field, 0.5, 2.0, 1).unwrap();
        assert!((k.amplitude - static_pure_amplitude(1.0, &field, 0.5, 2.0)).norm() < 1e-14);
    }

    #[test]
    fn sliced_converges_to_exact_at_second_order() {
        let s = SpinQuantum::integer(1);
        let field = FieldProtocol::new(0.7, 0.3, 1.9);
        let exact = exact_evolution(s, &field, 0.0, 2.0);
        let e1 = max_abs_diff(&sliced_evolution(s, &field, 0.0, 2.0, 40).unwrap(), &exact);
        let e2 = max_abs_diff(&sliced_evolution(s, &field, 0.0, 2.0, 80).unwrap(), &exact);
        assert!((e1 / e2 - 4.0).abs() < 0.4);
    }

    #[test]
    fn insertion_spin_half_static() {
        let f = FiducialVector::pure(SpinQuantum::from_twice(1), -1).unwrap();
        let field = FieldProtocol::new(0.0, 0.9, 0.0);
        let r = insertion_identity_residual(
            &f,
            &EulerAngles::new(0.3, 0.4, 0.5),
            &EulerAngles::new(-0.2, 1.3, 0.1),
            &field,
            0.0,
            0.7,
            1.5,
            &QuadratureSpec::uniform(4).unwrap(),
        );
        assert!(r < 1e-10);
    }
}
