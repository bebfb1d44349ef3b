//! Small dense complex linear algebra on top of `nalgebra`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

/// Square complex matrix. Spin matrices index rows and columns by
/// `m = +s, s-1, …, -s` (descending), see [`crate::SpinQuantum::index_of`].
pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Largest entry modulus, `‖A‖∞` in the entrywise sense used throughout.
pub fn max_abs(a: &ComplexMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |A - B|` entrywise.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `‖A†A − 1‖∞`.
pub fn unitarity_defect(a: &ComplexMatrix) -> f64 {
    let n = a.nrows();
    max_abs_diff(&(a.adjoint() * a), &ComplexMatrix::identity(n, n))
}

/// `exp(-i τ H)` for Hermitian `H`, via the spectral decomposition.
pub fn expm_hermitian(h: &ComplexMatrix, tau: f64) -> ComplexMatrix {
    let n = h.nrows();
    if n == 1 {
        return ComplexMatrix::from_element(1, 1, (-I * tau * h[(0, 0)].re).exp());
    }
    // symmetrize against rounding so the eigen solver sees an exactly Hermitian input
    let herm = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(herm);
    let phases = DVector::from_iterator(n, eig.eigenvalues.iter().map(|&l| (-I * tau * l).exp()));
    let v = &eig.eigenvectors;
    v * ComplexMatrix::from_diagonal(&phases) * v.adjoint()
}

/// `⟨a|b⟩` with the bra conjugated.
pub fn inner(a: &ComplexVector, b: &ComplexVector) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// `⟨a|M|b⟩`.
pub fn sandwich(a: &ComplexVector, m: &ComplexMatrix, b: &ComplexVector) -> Complex64 {
    inner(a, &(m * b))
}
