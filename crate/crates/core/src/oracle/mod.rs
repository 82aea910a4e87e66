//! Reference computations that share no code path with the library they
//! check: an adaptive IVP integrator, adaptive Simpson quadrature, a
//! finite-difference Schwarzian and an algebraic circle fit.

mod circle;
mod ivp;
mod quad;
mod report;
mod schwarzian;

pub use circle::{fit_circle, CircleFit};
pub use ivp::{ivp_solve, schwarzian_direct};
pub use quad::adaptive_quad;
pub use report::{CaseRecord, OracleReport};
pub use schwarzian::{schwarzian_fd, schwarzian_fd_extrapolated};
