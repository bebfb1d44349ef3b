//! Product quadrature over the Euler-angle domain.
//!
//! `θ` is integrated by Gauss–Legendre in `cos θ` (so `sin θ dθ` is absorbed
//! into the weights) and `φ`, `ψ` by the uniform periodic trapezoid rule.
//! Integrands built from spin-`s` matrix elements are polynomials of degree
//! at most `2s` in `cos θ` after the angular sums, and trigonometric
//! polynomials of degree at most `2s` in `φ`, `ψ`, so orders `≥ 2s + 1`
//! reproduce the continuum integrals up to rounding.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::su2::EulerAngles;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub n_theta: usize,
    pub n_phi: usize,
    pub n_psi: usize,
}

impl QuadratureSpec {
    pub fn new(n_theta: usize, n_phi: usize, n_psi: usize) -> Result<Self> {
        if n_theta == 0 || n_phi == 0 || n_psi == 0 {
            return Err(Error::InvalidArgument(format!("quadrature orders must be ≥ 1, got ({n_theta}, {n_phi}, {n_psi})")));
        }
        Ok(Self { n_theta, n_phi, n_psi })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(n, n, n)
    }

    /// Nodes and weights of the product rule. Weights sum to `8π²`.
    ///
    /// Ordering is fixed (θ outermost, ψ innermost) so that reductions over
    /// the grid are bit-reproducible.
    pub fn grid(&self) -> Vec<(EulerAngles, f64)> {
        let (x, w) = gauss_legendre(self.n_theta);
        let dphi = 2.0 * PI / self.n_phi as f64;
        let dpsi = 2.0 * PI / self.n_psi as f64;
        let mut out = Vec::with_capacity(self.n_theta * self.n_phi * self.n_psi);
        for (xi, wi) in x.iter().zip(&w) {
            let theta = xi.clamp(-1.0, 1.0).acos();
            for j in 0..self.n_phi {
                for k in 0..self.n_psi {
                    out.push((EulerAngles::new(j as f64 * dphi, theta, k as f64 * dpsi), wi * dphi * dpsi));
                }
            }
        }
        out
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}
