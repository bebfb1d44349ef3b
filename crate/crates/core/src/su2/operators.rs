use num_complex::Complex64;

use super::SpinQuantum;
use crate::linalg::{c, ComplexMatrix};

/// The spin operators of the `2s+1` dimensional irrep.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinOperators {
    pub s1: ComplexMatrix,
    pub s2: ComplexMatrix,
    pub s3: ComplexMatrix,
    pub plus: ComplexMatrix,
    pub minus: ComplexMatrix,
}

pub fn spin_operators(s: SpinQuantum) -> SpinOperators {
    let d = s.dim();
    let mut s3 = ComplexMatrix::zeros(d, d);
    let mut plus = ComplexMatrix::zeros(d, d);
    for (i, two_m) in s.twice_m_values().enumerate() {
        s3[(i, i)] = c(two_m as f64 / 2.0, 0.0);
        // S₊|m−1⟩ = f(s,m)|m⟩ sits on the super-diagonal
        if i + 1 < d {
            plus[(i, i + 1)] = c(s.ladder(two_m), 0.0);
        }
    }
    let minus = plus.adjoint();
    let half = Complex64::new(0.5, 0.0);
    let s1 = (&plus + &minus) * half;
    let s2 = (&plus - &minus) * Complex64::new(0.0, -0.5);
    SpinOperators { s1, s2, s3, plus, minus }
}
