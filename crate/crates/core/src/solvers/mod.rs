//! Inverse problems: curvature to `λ`, `(κ₁, p₂)` to `(t, λ)`, and the
//! range of `λ` giving univalent maps.

mod one;
mod roots;
mod two;
mod univalence;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ScqError};
use crate::exec::Execution;
use crate::scq::{rotated, SppsTableau};

pub use one::{solve_one, solve_one_with};
pub use roots::{polish_root, scan_roots};
pub use two::{p2_at, solve_kappa1, solve_kappa1_with, solve_two, TwoParamSolution};
pub use univalence::{
    lambda_min, univalence_bounds, univalence_bounds_with, univalence_sweep, UnivalenceBounds,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Grid intervals `M`.
    pub m: usize,
    /// Series order `N`.
    pub n: usize,
    pub root_tol: f64,
    pub t_lo: f64,
    pub t_hi: f64,
    pub max_iter: usize,
    /// Equal steps of the coarse sign-change scan.
    pub scan_steps: usize,
    #[serde(skip)]
    pub execution: Execution,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            m: 60,
            n: 30,
            root_tol: 1e-8,
            t_lo: 0.01 * PI,
            t_hi: 0.49 * PI,
            max_iter: 200,
            scan_steps: 512,
            execution: Execution::default(),
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_lo > 0.0 && self.t_lo < self.t_hi && self.t_hi < 0.5 * PI) {
            return Err(ScqError::InvalidArgument(format!(
                "t bracket ({}, {}) must satisfy 0 < t_lo < t_hi < pi/2",
                self.t_lo, self.t_hi
            )));
        }
        if !(self.root_tol > 0.0) {
            return Err(ScqError::InvalidArgument(format!(
                "root_tol = {}",
                self.root_tol
            )));
        }
        if self.max_iter == 0 || self.scan_steps < 2 || self.n == 0 {
            return Err(ScqError::InvalidArgument(
                "max_iter, scan_steps and N must be positive".into(),
            ));
        }
        crate::quadrature::Grid::new(self.m)?;
        Ok(())
    }
}

/// Tableaux for `t` and for the quarter-turn partner `π/2 - t`.
#[derive(Debug, Clone)]
pub struct TableauPair {
    pub tab: SppsTableau,
    pub rot: SppsTableau,
}

impl TableauPair {
    pub fn build(t: f64, m: usize, n: usize) -> Result<Self> {
        let tab = SppsTableau::build(t, m, n)?;
        let rot = SppsTableau::build(rotated(t), m, n)?;
        Ok(Self { tab, rot })
    }

    pub fn from_config(t: f64, cfg: &SolverConfig) -> Result<Self> {
        Self::build(t, cfg.m, cfg.n)
    }

    pub fn t(&self) -> f64 {
        self.tab.t()
    }

    pub fn geometry(&self, lambda: f64) -> Result<crate::scq::ScqGeometry> {
        crate::scq::geometry(&self.tab, &self.rot, lambda)
    }
}
