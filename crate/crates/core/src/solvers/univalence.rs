use serde::{Deserialize, Serialize};

use crate::error::{Result, ScqError};
use crate::scq::SppsTableau;

use super::roots::scan_roots;
use super::{SolverConfig, TableauPair};

/// `λ_min(t) < λ∞(t) < λ_max(t)` bounding the univalent maps at `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnivalenceBounds {
    pub t: f64,
    pub lambda_min: f64,
    pub lambda_inf: f64,
    pub lambda_max: f64,
}

impl UnivalenceBounds {
    pub fn contains(&self, lambda: f64) -> bool {
        lambda > self.lambda_min && lambda < self.lambda_max
    }
}

/// Largest zero of `y₁(1)` below `λ∞`: the right edge passes through ∞.
pub fn lambda_min(tab: &SppsTableau, cfg: &SolverConfig) -> Result<f64> {
    let y1 = &tab.boundary_series().y1;
    let dy1 = y1.derivative();
    let center = tab.lambda_inf();
    let radius = tab.validated_radius();
    let lo = center - radius;
    let f = |x: f64| (y1.eval(x), dy1.eval(x));
    scan_roots(f, lo, center, cfg.scan_steps, 0.0, cfg.max_iter)
        .last()
        .copied()
        .ok_or_else(|| {
            ScqError::NoRoot(format!(
                "y1(1) has no zero in [{lo}, {center}] at t = {}; increase N",
                tab.t()
            ))
        })
}

/// λ_max(t) comes from the upper edge running through ∞, which under the
/// quarter turn is λ_min of the partner tableau with the sign flipped.
pub fn univalence_bounds_with(pair: &TableauPair, cfg: &SolverConfig) -> Result<UnivalenceBounds> {
    Ok(UnivalenceBounds {
        t: pair.t(),
        lambda_min: lambda_min(&pair.tab, cfg)?,
        lambda_inf: pair.tab.lambda_inf(),
        lambda_max: -lambda_min(&pair.rot, cfg)?,
    })
}

pub fn univalence_bounds(t: f64, cfg: &SolverConfig) -> Result<UnivalenceBounds> {
    univalence_bounds_with(&TableauPair::from_config(t, cfg)?, cfg)
}

/// Bounds at `samples` equispaced `t` in `[cfg.t_lo, cfg.t_hi]`, in order
/// of `t` whatever the execution strategy.
pub fn univalence_sweep(
    samples: usize,
    cfg: &SolverConfig,
) -> Vec<(f64, Result<UnivalenceBounds>)> {
    let ts: Vec<f64> = (0..samples)
        .map(|k| {
            if samples == 1 {
                cfg.t_lo
            } else {
                cfg.t_lo + (cfg.t_hi - cfg.t_lo) * k as f64 / (samples - 1) as f64
            }
        })
        .collect();
    cfg.execution.map(&ts, |&t| (t, univalence_bounds(t, cfg)))
}
