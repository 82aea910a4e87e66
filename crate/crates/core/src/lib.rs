//! Conformal maps from the unit disk onto symmetric right circular-arc
//! quadrilaterals.
//!
//! The accessory parameter `λ` of the Schwarzian is a spectral parameter of
//! a Sturm–Liouville problem with a known particular solution, so the
//! boundary data of the map are power series in `λ - λ∞` whose
//! coefficients are iterated integrals. [`scq::SppsTableau`] computes them
//! once per `t`; [`solvers`] inverts the curvature and midpoint relations;
//! [`mapper`] integrates the map along radii for rendering; [`oracle`]
//! holds independent reference computations used for verification.

// `!(x > 0.0)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod convergence;
pub mod error;
pub mod exec;
pub mod mapper;
pub mod oracle;
pub mod quadrature;
pub mod scq;
pub mod series;
pub mod solvers;
pub mod verify;

pub use error::{Result, ScqError};
pub use exec::Execution;
pub use num_complex::Complex64;
