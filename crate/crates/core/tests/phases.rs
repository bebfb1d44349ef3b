mod common;

use std::f64::consts::{PI, TAU};

use common::random_fiducial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spincs_core::dynamics::{
    cyclic_omega, cyclic_theta, delta_zero_omega, integrate_trajectory, one_form, precession_trajectory, CyclicCase,
};
use spincs_core::phases::{
    dynamical_phase, geometric_phase, interference_intensity, line_phase, scenario_closed_form, surface_phase, total_phase, two_form,
    CircleOrbit, ClosedCurve, RuledSurface, Scenario, A3_WEIGHT,
};
use spincs_core::{EulerAngles, FiducialVector, FieldProtocol, GaugeChoice, OmegaDot, QuadratureSpec, SpinQuantum, Trajectory};

const STEPS: usize = 2000;

fn pure_field(theta0: f64) -> FieldProtocol {
    let base = FieldProtocol::new(1.0, -1.0, 0.0).with_hbar(1.3);
    FieldProtocol { drive_omega: cyclic_omega(&base, CyclicCase::PureM, theta0).unwrap(), ..base }
}

#[test]
fn monopole_phase_over_one_period() {
    let s = SpinQuantum::integer(2);
    for theta0 in [PI / 6.0, PI / 3.0, 2.0 * PI / 5.0] {
        let field = pure_field(theta0);
        let period = field.period().unwrap();
        for two_m in [-4, -2, 0, 2, 4] {
            let f = FiducialVector::pure(s, two_m).unwrap();
            let om0 = EulerAngles::new(0.0, theta0, 0.0);
            let tr = if f.is_inert() {
                precession_trajectory(om0, &field, period, STEPS).unwrap()
            } else {
                integrate_trajectory(&f, om0, &field, GaugeChoice::PsiLocked, period, STEPS).unwrap()
            };
            let got = total_phase(&f, &tr, &field).unwrap();
            let want = scenario_closed_form(Scenario::Simplest(two_m as f64 / 2.0), &field, theta0).unwrap();
            assert!((got.gamma - want.gamma).abs() < 1e-6 * field.hbar, "m = {two_m}/2, θ₀ = {theta0}");
            assert!((got.delta - want.delta).abs() < 1e-6 * field.hbar);
            assert!((got.gamma - got.gamma_a0_part - got.gamma_a3_part).abs() < 1e-10);
            let m = two_m as f64 / 2.0;
            assert!((want.gamma + TAU * m * field.hbar * (1.0 - theta0.cos())).abs() < 1e-12);
        }
    }
}

#[test]
fn two_thirds_fiducial_is_the_m_one_third_monopole() {
    let f = FiducialVector::spin1_two_thirds();
    for theta0 in [0.4, 1.0, 2.0] {
        let field = pure_field(theta0);
        let tr =
            integrate_trajectory(&f, EulerAngles::new(0.0, theta0, 0.0), &field, GaugeChoice::PsiLocked, field.period().unwrap(), STEPS)
                .unwrap();
        let got = total_phase(&f, &tr, &field).unwrap();
        let want = scenario_closed_form(Scenario::SimpleSpin1, &field, theta0).unwrap();
        assert!((got.gamma - 2.0 / 3.0 * PI * field.hbar * (theta0.cos() - 1.0)).abs() < 1e-6 * field.hbar);
        assert!((got.delta - want.delta).abs() < 1e-6);
        assert_eq!(want, scenario_closed_form(Scenario::Simplest(1.0 / 3.0), &field, theta0).unwrap());
    }
}

#[test]
fn equal_pair_fiducial_has_no_phase() {
    let f = FiducialVector::spin1_equal_pair();
    let fields = [pure_field(1.0), FieldProtocol::new(0.7, 0.2, 2.3), FieldProtocol::new(0.0, 1.1, 0.0)];
    for field in fields {
        let tr = precession_trajectory(EulerAngles::new(0.2, 0.9, 0.1), &field, 5.0, STEPS).unwrap();
        let got = total_phase(&f, &tr, &field).unwrap();
        assert!(got.gamma.abs() < 1e-10 && got.delta.abs() < 1e-10);
    }
    assert_eq!(scenario_closed_form(Scenario::SpecialSpin1, &fields[1], 0.3).unwrap().gamma, 0.0);
}

fn a3_field() -> FieldProtocol {
    FieldProtocol { drive_omega: 1.3, ..FieldProtocol::new(1.0, 0.5, 0.0).with_mu(-1.0).with_hbar(0.9) }
}

#[test]
fn a3_fiducial_phases() {
    let f = FiducialVector::spin1_uniform();
    let field = a3_field();
    let theta0 = cyclic_theta(&field, CyclicCase::A3Case).unwrap();
    let tr = integrate_trajectory(&f, EulerAngles::new(0.0, theta0, 0.0), &field, GaugeChoice::PsiFrozen, field.period().unwrap(), STEPS)
        .unwrap();
    assert!(tr.closure_residual() < 1e-6);
    let got = total_phase(&f, &tr, &field).unwrap();
    let h = field.hbar;
    let gamma = -A3_WEIGHT * h * PI * theta0.sin();
    let delta = -A3_WEIGHT * PI * field.mu / field.drive_omega * (field.b0 * theta0.cos() - field.b * theta0.sin());
    assert!((got.gamma - gamma).abs() < 1e-6);
    assert!((got.delta - delta).abs() < 1e-6);
    assert!(got.gamma_a0_part.abs() < 1e-12);
    let want = scenario_closed_form(Scenario::A3Spin1, &field, theta0).unwrap();
    assert!((want.gamma - gamma).abs() < 1e-14 && (want.delta - delta).abs() < 1e-14);
}

#[test]
fn delta_zero_condition() {
    let mut field = FieldProtocol::new(0.8, 0.6, 0.0).with_mu(-1.0);
    field.drive_omega = delta_zero_omega(&field).unwrap();
    let root = (field.b0 * field.b0 + field.b * field.b).sqrt();
    let period = field.period().unwrap();

    let s = SpinQuantum::integer(1);
    for two_m in [-2, 2] {
        let f = FiducialVector::pure(s, two_m).unwrap();
        let theta0 = cyclic_theta(&field, CyclicCase::PureM).unwrap();
        let tr = integrate_trajectory(&f, EulerAngles::new(0.0, theta0, 0.0), &field, GaugeChoice::PsiLocked, period, STEPS).unwrap();
        let got = total_phase(&f, &tr, &field).unwrap();
        let m = two_m as f64 / 2.0;
        assert!(got.delta.abs() < 1e-8);
        assert!((got.gamma + 2.0 * m * PI * (1.0 + field.b0 / root)).abs() < 1e-6);
        assert!((interference_intensity(&got) - (1.0 + got.gamma.cos())).abs() < 1e-8);
    }

    let f = FiducialVector::spin1_uniform();
    let theta0 = cyclic_theta(&field, CyclicCase::A3Case).unwrap();
    let tr = integrate_trajectory(&f, EulerAngles::new(0.0, theta0, 0.0), &field, GaugeChoice::PsiFrozen, period, STEPS).unwrap();
    let got = total_phase(&f, &tr, &field).unwrap();
    assert!(got.delta.abs() < 1e-8);
    assert!((got.gamma + A3_WEIGHT * PI * field.b0 / root).abs() < 1e-6);
}

#[test]
fn m_zero_gives_full_intensity() {
    let mut field = FieldProtocol::new(0.8, 0.6, 0.0).with_mu(-1.0);
    field.drive_omega = delta_zero_omega(&field).unwrap();
    let theta0 = cyclic_theta(&field, CyclicCase::PureM).unwrap();
    let r = scenario_closed_form(Scenario::Simplest(0.0), &field, theta0).unwrap();
    assert_eq!(r.gamma, 0.0);
    assert_eq!(interference_intensity(&r), 2.0);
}

#[test]
fn negative_drive_reverses_gamma() {
    let base = FieldProtocol::new(1.0, 1.0, 0.0);
    let theta0 = 1.0;
    let field = FieldProtocol { drive_omega: cyclic_omega(&base, CyclicCase::PureM, theta0).unwrap(), ..base };
    assert!(field.drive_omega < 0.0);
    let f = FiducialVector::pure(SpinQuantum::integer(1), 2).unwrap();
    let tr = integrate_trajectory(&f, EulerAngles::new(0.0, theta0, 0.0), &field, GaugeChoice::PsiLocked, field.period().unwrap(), STEPS)
        .unwrap();
    let got = total_phase(&f, &tr, &field).unwrap();
    let want = scenario_closed_form(Scenario::Simplest(1.0), &field, theta0).unwrap();
    assert!((got.gamma - want.gamma).abs() < 1e-6 && (got.delta - want.delta).abs() < 1e-6);
    assert!(want.gamma > 0.0);
}

fn circle_path(theta: f64, psi_of: impl Fn(f64) -> (f64, f64), reparam: impl Fn(f64) -> (f64, f64), n: usize) -> Trajectory {
    Trajectory::from_fn(0.0, 1.0, n, |tau| {
        let (t, dt) = reparam(tau);
        let (psi, dpsi) = psi_of(t);
        (EulerAngles::new(TAU * t, theta, psi), OmegaDot::new(TAU * dt, 0.0, dpsi * dt))
    })
    .unwrap()
}

#[test]
fn gamma_is_reparametrization_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let f = random_fiducial(SpinQuantum::integer(1), &mut rng);
    let psi = |t: f64| (0.3 * (TAU * t).sin(), 0.3 * TAU * (TAU * t).cos());
    let plain = circle_path(1.1, psi, |t| (t, 1.0), 4000);
    let warped = circle_path(1.1, psi, |t| (t + 0.1 * (TAU * t).sin() / TAU, 1.0 + 0.1 * (TAU * t).cos()), 4000);
    let a = geometric_phase(&f, &plain, 1.0).unwrap().gamma;
    let b = geometric_phase(&f, &warped, 1.0).unwrap().gamma;
    assert!((a - b).abs() < 1e-10, "{a} vs {b}");
}

#[test]
fn reversal_flips_gamma_and_keeps_static_delta() {
    let f = FiducialVector::pure(SpinQuantum::integer(2), 2).unwrap();
    let field = FieldProtocol::new(0.0, 0.8, 0.0).with_mu(1.5);
    let tr = integrate_trajectory(&f, EulerAngles::new(0.0, 0.9, 0.0), &field, GaugeChoice::PsiLocked, TAU / 1.2, 600).unwrap();
    let rev = tr.reversed();
    let (g, g_rev) = (geometric_phase(&f, &tr, 1.0).unwrap().gamma, geometric_phase(&f, &rev, 1.0).unwrap().gamma);
    assert!((g + g_rev).abs() < 1e-12);
    let (d, d_rev) = (dynamical_phase(&f, &tr, &field).unwrap().delta, dynamical_phase(&f, &rev, &field).unwrap().delta);
    // the reversed path spends the same time at each energy; the oriented integral ∫_T^0 H dt is −Δ
    assert!((d - d_rev).abs() < 1e-12);
}

#[test]
fn psi_shift_is_neutral_when_a1_and_a4_vanish() {
    let f = FiducialVector::spin1_two_thirds();
    let base = circle_path(0.8, |t| (-TAU * t, -TAU), |t| (t, 1.0), 2000);
    let wiggle =
        circle_path(0.8, |t| (-TAU * t + 0.7 * (TAU * t).sin().powi(2), -TAU + 0.7 * TAU * (2.0 * TAU * t).sin()), |t| (t, 1.0), 2000);
    let a = geometric_phase(&f, &base, 1.0).unwrap().gamma;
    let b = geometric_phase(&f, &wiggle, 1.0).unwrap().gamma;
    assert!((a - b).abs() < 1e-10);
}

#[test]
fn two_form_is_the_exterior_derivative() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for two_s in 1..=5 {
        let f = random_fiducial(SpinQuantum::from_twice(two_s), &mut rng);
        let p = [rng.gen_range(-3.0..3.0), rng.gen_range(0.3..2.8), rng.gen_range(-3.0..3.0)];
        let exact = two_form(&f, &EulerAngles::from_array(p), 1.2);
        let err = |h: f64| {
            let d = |i: usize, j: usize| {
                let mut a = p;
                let mut b = p;
                a[i] += h;
                b[i] -= h;
                (one_form(&f, &EulerAngles::from_array(a), 1.2)[j] - one_form(&f, &EulerAngles::from_array(b), 1.2)[j]) / (2.0 * h)
            };
            // coordinate order (φ, θ, ψ) = (0, 1, 2)
            let tp = d(1, 0) - d(0, 1);
            let ps = d(0, 2) - d(2, 0);
            let st = d(2, 1) - d(1, 2);
            (tp - exact.dtheta_dphi).abs().max((ps - exact.dphi_dpsi).abs()).max((st - exact.dpsi_dtheta).abs())
        };
        let (e1, e2) = (err(1e-2), err(5e-3));
        assert!(e1 < 1e-3 && (e1 / e2).log2() > 1.9, "2s = {two_s}: {e1} {e2}");
    }
}

#[test]
fn monopole_cap_from_the_pole() {
    let q = QuadratureSpec::new(24, 16, 1).unwrap();
    let s = SpinQuantum::integer(2);
    for two_m in [-4, -2, 2, 4] {
        let f = FiducialVector::pure(s, two_m).unwrap();
        for theta0 in [0.4, 1.2, 2.5] {
            let (inner, outer) = (CircleOrbit::locked(0.0), CircleOrbit::locked(theta0));
            let surf = surface_phase(&f, &RuledSurface { inner: &inner, outer: &outer }, &q, 1.0).unwrap();
            let m = two_m as f64 / 2.0;
            assert!((surf + TAU * m * (1.0 - theta0.cos())).abs() < 1e-10);
            assert!((surf - line_phase(&f, &outer, 64, 1.0).unwrap()).abs() < 1e-10);
        }
        let (inner, outer) = (CircleOrbit::locked(0.0), CircleOrbit::locked(1e-9));
        assert!(surface_phase(&f, &RuledSurface { inner: &inner, outer: &outer }, &q, 1.0).unwrap().abs() < 1e-15);
    }
}

#[test]
fn stokes_for_a3_fiducial_and_annuli() {
    let f = FiducialVector::spin1_uniform();
    let q = QuadratureSpec::new(24, 32, 1).unwrap();
    let theta0 = PI / 4.0;
    let orbit = CircleOrbit::frozen(theta0);
    let point = CircleOrbit::frozen(0.0);
    let surf = surface_phase(&f, &RuledSurface { inner: &point, outer: &orbit }, &q, 1.0).unwrap();
    let traj =
        Trajectory::from_fn(0.0, TAU, 2000, |v| (EulerAngles::from_array(orbit.point(v)), OmegaDot::from_array(orbit.tangent(v)))).unwrap();
    let line = geometric_phase(&f, &traj, 1.0).unwrap().gamma;
    assert!((surf - line).abs() < 1e-6);
    assert!((line + A3_WEIGHT * PI * theta0.sin()).abs() < 1e-10);

    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..5 {
        let g = random_fiducial(SpinQuantum::from_twice(rng.gen_range(1..=4)), &mut rng);
        let a = CircleOrbit { theta: 0.5, phi0: 0.3, psi0: -0.2, phi_winding: 1.0, psi_winding: 2.0 };
        let b = CircleOrbit { theta: 2.1, phi0: -0.4, psi0: 1.0, phi_winding: 1.0, psi_winding: 2.0 };
        let surf = surface_phase(&g, &RuledSurface { inner: &a, outer: &b }, &QuadratureSpec::new(24, 64, 1).unwrap(), 1.0).unwrap();
        let lines = line_phase(&g, &b, 256, 1.0).unwrap() - line_phase(&g, &a, 256, 1.0).unwrap();
        assert!((surf - lines).abs() < 1e-6, "{surf} vs {lines}");
    }
}
