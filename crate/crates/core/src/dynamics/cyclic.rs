use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::FieldProtocol;
use crate::error::{Error, Result};

/// Which resonance relation fixes the polar angle of the cyclic orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CyclicCase {
    /// `cot θ₀ = B/B₀ + ħω/(μB₀)`; fiducials with `A₁ = A₄ = 0`, gauge `ψ = −φ`.
    PureM,
    /// `tan θ₀ = −(B/B₀ + ħω/(μB₀))`; the uniform spin-1 fiducial, gauge `ψ = 0`.
    A3Case,
}

fn ratio(field: &FieldProtocol) -> Result<f64> {
    if field.b0 == 0.0 || field.mu == 0.0 {
        return Err(Error::NoCyclicSolution("the transverse coupling μB₀ vanishes".into()));
    }
    Ok(field.b / field.b0 + field.hbar * field.drive_omega / (field.mu * field.b0))
}

/// Polar angle `θ₀ ∈ (0, π)` of the cyclic orbit `φ = ωt`, `θ = θ₀`.
pub fn cyclic_theta(field: &FieldProtocol, case: CyclicCase) -> Result<f64> {
    let x = ratio(field)?;
    match case {
        CyclicCase::PureM => Ok(FRAC_PI_2 - x.atan()),
        CyclicCase::A3Case => {
            let y = -x;
            if y > 0.0 {
                Ok(y.atan())
            } else if y < 0.0 {
                Ok(PI + y.atan())
            } else {
                Err(Error::NoCyclicSolution("tan θ₀ = 0 has no root inside (0, π)".into()))
            }
        }
    }
}

/// Drive frequency making `θ₀` cyclic for the given `B₀`, `B`, `μ`, `ħ`
/// (the `drive_omega` of `field` is ignored).
pub fn cyclic_omega(field: &FieldProtocol, case: CyclicCase, theta0: f64) -> Result<f64> {
    if !(theta0 > 0.0 && theta0 < PI) {
        return Err(Error::InvalidArgument(format!("θ₀ = {theta0} must lie in (0, π)")));
    }
    let k = field.mu / field.hbar;
    match case {
        CyclicCase::PureM => Ok(k * (field.b0 / theta0.tan() - field.b)),
        CyclicCase::A3Case => {
            if (theta0 - FRAC_PI_2).abs() < 1e-12 {
                return Err(Error::NoCyclicSolution("tan θ₀ diverges at θ₀ = π/2".into()));
            }
            Ok(-k * (field.b0 * theta0.tan() + field.b))
        }
    }
}

/// `ω = −μ(B₀² + B²)/(ħB)`, the drive for which the dynamical phase vanishes on the cyclic orbit.
pub fn delta_zero_omega(field: &FieldProtocol) -> Result<f64> {
    if field.b == 0.0 {
        return Err(Error::NoCyclicSolution("the Δ = 0 condition needs B ≠ 0".into()));
    }
    Ok(-field.mu * (field.b0 * field.b0 + field.b * field.b) / (field.hbar * field.b))
}
