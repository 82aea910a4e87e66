use thiserror::Error;

pub type Result<T> = std::result::Result<T, ScqError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScqError {
    #[error("grid resolution {0} is not a positive multiple of 5")]
    InvalidResolution(usize),

    #[error("grid functions live on different grids (M = {left} vs M = {right})")]
    GridMismatch { left: usize, right: usize },

    #[error("expected {expected} samples, got {actual}")]
    SampleCount { expected: usize, actual: usize },

    #[error("non-finite sample at node {0}")]
    NonFinite(usize),

    #[error("t = {0} lies outside the open interval (0, pi/2)")]
    AngleOutOfRange(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("z = {re} + {im}i is a vertex preimage of the map")]
    Singularity { re: f64, im: f64 },

    #[error("y1(1) vanishes at t = {t}, lambda = {lambda}: an edge passes through infinity")]
    EdgeAtInfinity { t: f64, lambda: f64 },

    #[error("no root in range: {0}")]
    NoRoot(String),

    #[error("kappa1 = {0} exceeds 2; the right edge would have radius below 1/2")]
    Kappa1TooLarge(f64),

    #[error("kappa1 = {target} is below the attainable minimum {minimum} at t = {t}")]
    Kappa1Unreachable { t: f64, target: f64, minimum: f64 },

    #[error("target p2 = {target} outside the bracket [{lo}, {hi}]")]
    BracketTooNarrow { target: f64, lo: f64, hi: f64 },

    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),

    #[error("y vanishes along the ray at r = {r} (theta = {theta})")]
    CriticalPoint { theta: f64, r: f64 },

    #[error("step size underflow at z = {0}")]
    StepUnderflow(f64),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error("{digits} significant digits not reached with M <= {m}, N <= {n}")]
    ResolutionNotReached { digits: usize, m: usize, n: usize },
}

impl ScqError {
    /// Whether the error stems from the caller's input rather than from
    /// the numerics.
    pub fn is_invalid_input(&self) -> bool {
        matches!(
            self,
            ScqError::InvalidResolution(_)
                | ScqError::AngleOutOfRange(_)
                | ScqError::InvalidArgument(_)
                | ScqError::Kappa1TooLarge(_)
                | ScqError::UnsupportedFormat(_)
                | ScqError::GridMismatch { .. }
                | ScqError::SampleCount { .. }
        )
    }
}
