//! Spin (SU(2)) coherent states built on arbitrary fiducial vectors.
//!
//! The crate covers four layers:
//!
//! * [`su2`]: exact spin-`s` representation matrices, spin operators and
//!   Euler-angle group operations.
//! * [`coherent`]: coherent states `R(Ω)|Ψ₀⟩`, overlaps, the resolution of
//!   unity, the A-coefficient fields and the generating function.
//! * [`dynamics`]: the coherent-state path-integral Lagrangian, its
//!   (rank-deficient) canonical equations and a fixed-step integrator.
//! * [`phases`] and [`propagator`]: geometric and dynamical phases along
//!   cyclic trajectories, the associated 2-form, and the exact propagator
//!   used to check the time-slicing identities.

pub mod coherent;
pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod phases;
pub mod propagator;
pub mod quadrature;
pub mod su2;

pub use coherent::{CoherentState, FiducialVector};
pub use dynamics::{FieldProtocol, GaugeChoice, OmegaDot, Trajectory};
pub use error::{Error, Result};
pub use phases::PhaseResult;
pub use quadrature::QuadratureSpec;
pub use su2::{EulerAngles, SpinQuantum};
