use crate::error::{Result, ScqError};
use crate::scq::evaluate_kappa;

use super::roots::scan_roots;
use super::univalence::univalence_bounds_with;
use super::{SolverConfig, TableauPair};

/// All `λ` in the univalent and validated range with `κ(λ) = kappa`,
/// ordered by distance from `λ∞`.
pub fn solve_one(t: f64, kappa: f64, cfg: &SolverConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    solve_one_with(&TableauPair::from_config(t, cfg)?, kappa, cfg)
}

pub fn solve_one_with(pair: &TableauPair, kappa: f64, cfg: &SolverConfig) -> Result<Vec<f64>> {
    if !kappa.is_finite() {
        return Err(ScqError::InvalidArgument(format!("kappa = {kappa}")));
    }
    let tab = &pair.tab;
    let bounds = univalence_bounds_with(pair, cfg)?;
    let center = tab.lambda_inf();
    let radius = tab.validated_radius();
    let lo = bounds.lambda_min.max(center - radius);
    let hi = bounds.lambda_max.min(center + radius);

    let series = tab.kappa_series();
    let slope = series.derivative();
    let f = |x: f64| (series.eval(x) - kappa, slope.eval(x));
    let mut roots = scan_roots(f, lo, hi, cfg.scan_steps, cfg.root_tol, cfg.max_iter);
    roots.retain(|&x| (evaluate_kappa(tab, x) - kappa).abs() <= cfg.root_tol);
    if roots.is_empty() {
        return Err(ScqError::NoRoot(format!(
            "kappa = {kappa} is not attained for lambda in [{lo}, {hi}] at t = {}",
            tab.t()
        )));
    }
    roots.sort_by(|a, b| (a - center).abs().total_cmp(&(b - center).abs()));
    Ok(roots)
}
