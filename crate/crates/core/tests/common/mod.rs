#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use spincs_core::{EulerAngles, FiducialVector, SpinQuantum};

pub fn random_fiducial(s: SpinQuantum, rng: &mut impl Rng) -> FiducialVector {
    let coeffs = (0..s.dim()).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    FiducialVector::new(s, coeffs).expect("nonzero random vector")
}

pub fn random_angles(rng: &mut impl Rng) -> EulerAngles {
    EulerAngles::new(rng.gen_range(-7.0..7.0), rng.gen_range(0.0..std::f64::consts::PI), rng.gen_range(-7.0..7.0))
}
