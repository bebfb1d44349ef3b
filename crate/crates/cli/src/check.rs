//! Built-in invariant suite behind `spincs check`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use spincs_core::coherent::resolution_residual;
use spincs_core::dynamics::{
    canonical_matrix, cyclic_omega, cyclic_theta, delta_zero_omega, integrate_trajectory, precession_trajectory, CyclicCase,
};
use spincs_core::linalg::{max_abs_diff, unitarity_defect, ComplexMatrix};
use spincs_core::phases::{
    geometric_phase, line_phase, scenario_closed_form, surface_phase, total_phase, CircleOrbit, ClosedCurve, RuledSurface, Scenario,
};
use spincs_core::propagator::insertion_identity_residual;
use spincs_core::su2::{
    compose_rotations, compose_three, conjugated_s3, conjugated_s_minus, conjugated_s_plus, gaussian_decomposition, generator_identity,
    orthogonality_residual, rotation_matrix, spin_operators, AntiNormalParams,
};
use spincs_core::{EulerAngles, FiducialVector, FieldProtocol, GaugeChoice, OmegaDot, QuadratureSpec, SpinQuantum, Trajectory};

use crate::error::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckLevel {
    Fast,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    AtMost(f64),
    AtLeast(f64),
}

impl Bound {
    fn holds(self, value: f64) -> bool {
        match self {
            Self::AtMost(b) => value <= b,
            Self::AtLeast(b) => value >= b,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub samples: usize,
    pub value: f64,
    pub bound: Bound,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub level: CheckLevel,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

fn outcome(name: &str, samples: usize, value: f64, bound: Bound) -> CheckOutcome {
    CheckOutcome { name: name.into(), samples, value, bound, passed: !value.is_nan() && bound.holds(value) }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_fiducial(s: SpinQuantum, rng: &mut impl Rng) -> FiducialVector {
    let coeffs = (0..s.dim()).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    FiducialVector::new(s, coeffs).expect("a random vector is nonzero")
}

fn random_angles(rng: &mut impl Rng) -> EulerAngles {
    EulerAngles::new(rng.gen_range(-7.0..7.0), rng.gen_range(0.0..PI), rng.gen_range(-7.0..7.0))
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |a, b| if b.is_nan() { f64::NAN } else { a.max(b) })
}

fn resolution(per_spin: usize) -> CheckOutcome {
    let mut r = rng(1);
    let mut worst = Vec::new();
    for two_s in 1..=4u32 {
        let s = SpinQuantum::from_twice(two_s);
        let q = QuadratureSpec::uniform(two_s as usize + 4).expect("positive order");
        for _ in 0..per_spin {
            worst.push(resolution_residual(&random_fiducial(s, &mut r), &q));
        }
    }
    outcome("resolution_of_unity", worst.len(), max_of(worst), Bound::AtMost(1e-10))
}

fn unitarity() -> CheckOutcome {
    let mut r = rng(2);
    let n = 600;
    let v = (0..n).map(|k| {
        let om = EulerAngles::new(r.gen_range(-10.0..10.0), r.gen_range(-4.0..4.0), r.gen_range(-10.0..10.0));
        unitarity_defect(&rotation_matrix(SpinQuantum::from_twice(k % 6), &om))
    });
    outcome("unitarity", n as usize, max_of(v), Bound::AtMost(1e-12))
}

fn orthogonality() -> CheckOutcome {
    let v = (0..=5u32).map(|two_s| {
        let q = QuadratureSpec::uniform(two_s as usize + 4).expect("positive order");
        orthogonality_residual(SpinQuantum::from_twice(two_s), &q)
    });
    outcome("orthogonality", 6, max_of(v), Bound::AtMost(1e-10))
}

fn group_law() -> [CheckOutcome; 2] {
    let mut r = rng(3);
    let n = 200;
    let (mut two, mut three) = (Vec::new(), Vec::new());
    for k in 0..n {
        let s = SpinQuantum::from_twice(k % 6);
        let (a, b, c) = (random_angles(&mut r), random_angles(&mut r), random_angles(&mut r));
        let (ra, rb, rc) = (rotation_matrix(s, &a), rotation_matrix(s, &b), rotation_matrix(s, &c));
        two.push(max_abs_diff(&rotation_matrix(s, &compose_rotations(&a, &b).angles), &(&ra * &rb)));
        three.push(max_abs_diff(&rotation_matrix(s, &compose_three(&a, &b, &c).angles), &(&ra * &rb * &rc)));
    }
    [
        outcome("group_law_two_rotations", n as usize, max_of(two), Bound::AtMost(1e-10)),
        outcome("group_law_three_rotations", n as usize, max_of(three), Bound::AtMost(1e-10)),
    ]
}

fn gaussian() -> CheckOutcome {
    let mut r = rng(4);
    let n = 200;
    let mut worst = Vec::new();
    for k in 0..n {
        let s = SpinQuantum::from_twice(k % 6);
        let om = EulerAngles::new(r.gen_range(-7.0..7.0), r.gen_range(0.0..2.6), r.gen_range(-7.0..7.0));
        let rot = rotation_matrix(s, &om);
        let (Ok(g), Ok(a)) = (gaussian_decomposition(&om), AntiNormalParams::from_euler(&om)) else {
            worst.push(f64::NAN);
            continue;
        };
        worst.push(max_abs_diff(&g.reconstruct(s), &rot));
        worst.push(max_abs_diff(&a.reconstruct(s), &rot));
        worst.push(g.to_euler().map_or(f64::NAN, |back| max_abs_diff(&rotation_matrix(s, &back), &rot)));
    }
    outcome("gaussian_decomposition", n as usize, max_of(worst), Bound::AtMost(1e-10))
}

fn conjugation() -> CheckOutcome {
    let mut r = rng(5);
    let n = 100;
    let mut worst = Vec::new();
    for k in 0..n {
        let s = SpinQuantum::from_twice(k % 5);
        let ops = spin_operators(s);
        let om = random_angles(&mut r);
        let rot = rotation_matrix(s, &om);
        let rd = rot.adjoint();
        worst.push(max_abs_diff(&conjugated_s3(s, &om), &(&rd * &ops.s3 * &rot)));
        worst.push(max_abs_diff(&conjugated_s_plus(s, &om), &(&rd * &ops.plus * &rot)));
        worst.push(max_abs_diff(&conjugated_s_minus(s, &om), &(&rd * &ops.minus * &rot)));
    }
    outcome("conjugation_identities", n as usize, max_of(worst), Bound::AtMost(1e-12))
}

fn generator_order() -> CheckOutcome {
    let path = |t: f64| EulerAngles::new(0.5 * t + 0.2 * t * t, 1.0 + 0.3 * (2.0 * t).sin(), -0.7 * t);
    let rates = |t: f64| [0.5 + 0.4 * t, 0.6 * (2.0 * t).cos(), -0.7];
    let t = 0.8;
    let orders = (1..=5u32).map(|two_s| {
        let s = SpinQuantum::from_twice(two_s);
        let exact = generator_identity(s, &path(t), rates(t));
        let rd = rotation_matrix(s, &path(t)).adjoint();
        let err = |h: f64| {
            let diff: ComplexMatrix = rotation_matrix(s, &path(t + h)) - rotation_matrix(s, &path(t - h));
            max_abs_diff(&(&rd * diff * Complex64::new(0.5 / h, 0.0)), &exact)
        };
        (err(2e-2) / err(1e-2)).log2()
    });
    let min = orders.fold(f64::INFINITY, |a, b| if b.is_nan() { f64::NAN } else { a.min(b) });
    outcome("generator_identity_order", 5, min, Bound::AtLeast(1.9))
}

fn insertion() -> [CheckOutcome; 2] {
    let mut r = rng(6);
    let rotating = FieldProtocol::new(0.8, 0.3, 1.6).with_mu(-1.1);
    let s1 = SpinQuantum::integer(1);
    let q1 = QuadratureSpec::uniform(6).expect("positive order");
    let mut spin1 = Vec::new();
    for k in 0..6 {
        let f = if k == 0 { FiducialVector::spin1_uniform() } else { random_fiducial(s1, &mut r) };
        let (a, b) = (random_angles(&mut r), random_angles(&mut r));
        spin1.push(insertion_identity_residual(&f, &a, &b, &rotating, 0.2, 1.0, 2.5, &q1));
    }
    let field = FieldProtocol::new(0.5, 0.9, -0.7).with_hbar(0.8);
    let mut general = Vec::new();
    for two_s in 1..=5u32 {
        let s = SpinQuantum::from_twice(two_s);
        let q = QuadratureSpec::uniform(two_s as usize + 4).expect("positive order");
        let f = random_fiducial(s, &mut r);
        let (a, b) = (random_angles(&mut r), random_angles(&mut r));
        general.push(insertion_identity_residual(&f, &a, &b, &field, 0.0, 0.6, 1.3, &q));
    }
    [
        outcome("insertion_identity_spin1_rotating", spin1.len(), max_of(spin1), Bound::AtMost(1e-8)),
        outcome("insertion_identity_all_spins", general.len(), max_of(general), Bound::AtMost(1e-8)),
    ]
}

fn degeneracy() -> CheckOutcome {
    let mut r = rng(7);
    let n = 1000;
    let v = (0..n).map(|k| {
        let f = random_fiducial(SpinQuantum::from_twice(k % 6), &mut r);
        let m = canonical_matrix(&f, &random_angles(&mut r));
        m.determinant().abs() / m.norm().powi(3).max(f64::MIN_POSITIVE)
    });
    outcome("canonical_degeneracy", n as usize, max_of(v), Bound::AtMost(1e-12))
}

fn stokes() -> CheckOutcome {
    let mut worst = Vec::new();
    let q = QuadratureSpec::new(24, 32, 1).expect("positive order");
    for two_m in [-4, -2, 2, 4] {
        let f = FiducialVector::pure(SpinQuantum::integer(2), two_m).expect("valid level");
        for theta0 in [0.4, 1.2, 2.5] {
            let (inner, outer) = (CircleOrbit::locked(0.0), CircleOrbit::locked(theta0));
            let surf = surface_phase(&f, &RuledSurface { inner: &inner, outer: &outer }, &q, 1.0);
            let line = line_phase(&f, &outer, 64, 1.0);
            worst.push(match (surf, line) {
                (Ok(a), Ok(b)) => (a - b).abs(),
                _ => f64::NAN,
            });
        }
    }
    let f = FiducialVector::spin1_uniform();
    for theta0 in [PI / 6.0, PI / 4.0, 1.2] {
        let (point, orbit) = (CircleOrbit::frozen(0.0), CircleOrbit::frozen(theta0));
        let surf = surface_phase(&f, &RuledSurface { inner: &point, outer: &orbit }, &q, 1.0);
        let traj =
            Trajectory::from_fn(0.0, TAU, 2000, |v| (EulerAngles::from_array(orbit.point(v)), OmegaDot::from_array(orbit.tangent(v))));
        let line = traj.and_then(|t| geometric_phase(&f, &t, 1.0));
        worst.push(match (surf, line) {
            (Ok(a), Ok(b)) => (a - b.gamma).abs(),
            _ => f64::NAN,
        });
    }
    outcome("stokes", worst.len(), max_of(worst), Bound::AtMost(1e-6))
}

fn scenario_gap(
    case: Scenario,
    fid: &FiducialVector,
    field: &FieldProtocol,
    theta0: f64,
    gauge: GaugeChoice,
) -> spincs_core::Result<[f64; 3]> {
    let period = field.period().ok_or(spincs_core::Error::InvalidArgument("static field".into()))?;
    let om0 = EulerAngles::new(0.0, theta0, 0.0);
    let traj = if fid.is_inert() {
        precession_trajectory(om0, field, period, 2000)?
    } else {
        integrate_trajectory(fid, om0, field, gauge, period, 2000)?
    };
    let got = total_phase(fid, &traj, field)?;
    let want = scenario_closed_form(case, field, theta0)?;
    // inert fiducials follow the free precession, not the cyclic orbit
    let closure = if fid.is_inert() { 0.0 } else { traj.closure_residual() };
    Ok([(got.gamma - want.gamma).abs() / field.hbar, (got.delta - want.delta).abs(), closure])
}

fn scenarios() -> CheckOutcome {
    let mut worst = Vec::new();
    let mut push = |g: spincs_core::Result<[f64; 3]>| worst.extend(g.map_or([f64::NAN; 3], |v| v));
    let base = FieldProtocol::new(1.0, -1.0, 0.0).with_hbar(1.3);
    for theta0 in [PI / 6.0, PI / 3.0, 2.0 * PI / 5.0] {
        let Ok(w) = cyclic_omega(&base, CyclicCase::PureM, theta0) else {
            push(Err(spincs_core::Error::InvalidArgument("no drive".into())));
            continue;
        };
        let field = FieldProtocol { drive_omega: w, ..base };
        for two_m in [-4, -2, 0, 2, 4] {
            let f = FiducialVector::pure(SpinQuantum::integer(2), two_m).expect("valid level");
            push(scenario_gap(Scenario::Simplest(two_m as f64 / 2.0), &f, &field, theta0, GaugeChoice::PsiLocked));
        }
        push(scenario_gap(Scenario::SimpleSpin1, &FiducialVector::spin1_two_thirds(), &field, theta0, GaugeChoice::PsiLocked));
        push(scenario_gap(Scenario::SpecialSpin1, &FiducialVector::spin1_equal_pair(), &field, theta0, GaugeChoice::PsiLocked));
    }
    let a3 = FieldProtocol { drive_omega: 1.3, ..FieldProtocol::new(1.0, 0.5, 0.0).with_mu(-1.0).with_hbar(0.9) };
    let mut dz = FieldProtocol::new(0.8, 0.6, 0.0).with_mu(-1.0);
    dz.drive_omega = delta_zero_omega(&dz).unwrap_or(f64::NAN);
    for field in [a3, dz] {
        match cyclic_theta(&field, CyclicCase::A3Case) {
            Ok(th) => push(scenario_gap(Scenario::A3Spin1, &FiducialVector::spin1_uniform(), &field, th, GaugeChoice::PsiFrozen)),
            Err(e) => push(Err(e)),
        }
    }
    let n = worst.len() / 3;
    outcome("closed_form_scenarios", n, max_of(worst), Bound::AtMost(1e-6))
}

/// Runs the suite; `Fast` covers the resolution of unity and unitarity.
pub fn run_checks(level: CheckLevel) -> CliResult<CheckReport> {
    let mut checks = vec![resolution(if level == CheckLevel::Full { 10 } else { 3 }), unitarity()];
    if level == CheckLevel::Full {
        checks.push(orthogonality());
        checks.extend(group_law());
        checks.push(gaussian());
        checks.push(conjugation());
        checks.push(generator_order());
        checks.extend(insertion());
        checks.push(degeneracy());
        checks.push(stokes());
        checks.push(scenarios());
    }
    Ok(CheckReport { level, passed: checks.iter().all(|c| c.passed), checks })
}
