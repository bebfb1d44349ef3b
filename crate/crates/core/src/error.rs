use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Euler angle θ = {theta} is at the pole θ = π; the Gaussian parameters diverge")]
    AngleAtPole { theta: f64 },

    #[error("Gaussian parameters do not describe a rotation (mismatch {mismatch:.3e})")]
    NotARotation { mismatch: f64 },

    #[error("spin mismatch: 2s = {left} vs 2s = {right}")]
    SpinMismatch { left: u32, right: u32 },

    #[error("invalid fiducial vector: {0}")]
    InvalidFiducial(String),

    #[error("gauge-reduced canonical system is singular (|det| = {det:.3e})")]
    SingularReducedSystem { det: f64 },

    #[error("canonical equations are inconsistent for this gauge (residual {residual:.3e})")]
    InconsistentSystem { residual: f64 },

    #[error("integration failed at t = {time}: {source}")]
    Integration {
        time: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("no cyclic solution: {0}")]
    NoCyclicSolution(String),

    #[error("too few trajectory nodes ({0}, need at least 3)")]
    TooFewNodes(usize),

    #[error("invalid trajectory: {0}")]
    InvalidTrajectory(String),

    #[error("surface leaves the coordinate chart (θ = {theta} at u = {u}, v = {v})")]
    ChartViolation { theta: f64, u: f64, v: f64 },

    #[error("surface edges are not identified: {0}")]
    OpenSurface(String),

    #[error("unknown scenario case `{0}`")]
    UnknownCase(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
