use serde::{Deserialize, Serialize};

use crate::error::{Result, ScqError};
use crate::scq::ScqGeometry;

use super::roots::scan_roots;
use super::univalence::univalence_bounds_with;
use super::{SolverConfig, TableauPair};

/// Result of the two-parameter solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoParamSolution {
    pub t: f64,
    pub lambda: f64,
    pub geometry: ScqGeometry,
    pub iterations: usize,
}

/// The `λ` on the admissible branch at which the normalised right edge has
/// curvature `kappa1`.
pub fn solve_kappa1(t: f64, kappa1: f64, cfg: &SolverConfig) -> Result<f64> {
    cfg.validate()?;
    solve_kappa1_with(&TableauPair::from_config(t, cfg)?, kappa1, cfg)
}

/// `κ₁(λ) = κ(λ) y₂(1) / y₁(1)` equals 2 at `λ_min`, where `y₁(1) = 0`
/// (the Wronskian gives `y₁'(1) y₂(1) = -1` there), and that is its largest
/// value: the admissible branch is `(λ_min, λ_max)`, on which `κ₁`
/// decreases. The root is sought in `a(λ) = κ y₂(1) - κ₁ y₁(1)`, which has
/// the sign of `κ₁(λ) - κ₁` there.
pub fn solve_kappa1_with(pair: &TableauPair, kappa1: f64, cfg: &SolverConfig) -> Result<f64> {
    if !kappa1.is_finite() {
        return Err(ScqError::InvalidArgument(format!("kappa1 = {kappa1}")));
    }
    if kappa1 > 2.0 {
        return Err(ScqError::Kappa1TooLarge(kappa1));
    }
    let tab = &pair.tab;
    let bounds = univalence_bounds_with(pair, cfg)?;
    if kappa1 == 2.0 {
        return Ok(bounds.lambda_min);
    }

    let b = tab.boundary_series();
    let a = &(tab.kappa_series() * &b.y2) - &b.y1.scale(kappa1);
    let da = a.derivative();

    let center = tab.lambda_inf();
    let lo = bounds.lambda_min;
    let hi = bounds.lambda_max.min(center + tab.validated_radius());
    let start = lo + 1e-9 * (hi - lo);
    let f = |x: f64| (a.eval(x), da.eval(x));
    let roots = scan_roots(f, start, hi, cfg.scan_steps, 0.0, cfg.max_iter);
    match roots.first() {
        Some(&root) => Ok(root),
        None => {
            let minimum = tab.kappa_series().eval(hi) * b.y2.eval(hi) / b.y1.eval(hi);
            Err(ScqError::Kappa1Unreachable {
                t: tab.t(),
                target: kappa1,
                minimum,
            })
        }
    }
}

/// `λ` solving `κ₁` at the pair's `t` and the resulting geometry.
pub fn p2_at(pair: &TableauPair, kappa1: f64, cfg: &SolverConfig) -> Result<(f64, ScqGeometry)> {
    let lambda = solve_kappa1_with(pair, kappa1, cfg)?;
    Ok((lambda, pair.geometry(lambda)?))
}

enum Probe {
    Found(f64, ScqGeometry),
    /// `κ₁` is below the range reachable at this `t`; the target lies at
    /// smaller `t`, so this counts as `p₂ = +∞`.
    Beyond,
}

impl Probe {
    fn p2(&self) -> f64 {
        match self {
            Probe::Found(_, g) => g.p2,
            Probe::Beyond => f64::INFINITY,
        }
    }
}

fn probe(t: f64, kappa1: f64, cfg: &SolverConfig) -> Result<Probe> {
    let pair = TableauPair::from_config(t, cfg)?;
    match p2_at(&pair, kappa1, cfg) {
        Ok((lambda, g)) => Ok(Probe::Found(lambda, g)),
        Err(ScqError::Kappa1Unreachable { .. }) => Ok(Probe::Beyond),
        Err(e) => Err(e),
    }
}

/// Finds `(t, λ)` whose normalised map has right-edge curvature `kappa1`
/// and upper-edge midpoint `i p2`, by bisection on `t` using that `p₂` is
/// increasing in `t` at fixed `κ₁`.
pub fn solve_two(kappa1: f64, p2: f64, cfg: &SolverConfig) -> Result<TwoParamSolution> {
    cfg.validate()?;
    if kappa1 > 2.0 {
        return Err(ScqError::Kappa1TooLarge(kappa1));
    }
    if !(p2 > 0.0 && p2.is_finite()) {
        return Err(ScqError::InvalidArgument(format!(
            "p2 = {p2} must be positive"
        )));
    }

    let (mut lo, mut hi) = (cfg.t_lo, cfg.t_hi);
    let p_lo = probe(lo, kappa1, cfg)?.p2();
    let p_hi = probe(hi, kappa1, cfg)?.p2();
    if !(p_lo <= p2 && p2 <= p_hi) {
        return Err(ScqError::BracketTooNarrow {
            target: p2,
            lo: p_lo,
            hi: p_hi,
        });
    }

    let mut last = None;
    for iter in 1..=cfg.max_iter {
        let mid = 0.5 * (lo + hi);
        let p = probe(mid, kappa1, cfg)?;
        if let Probe::Found(lambda, g) = p {
            let solution = TwoParamSolution {
                t: mid,
                lambda,
                geometry: g,
                iterations: iter,
            };
            if (g.p2 - p2).abs() <= cfg.root_tol {
                return Ok(solution);
            }
            last = Some(solution);
        }
        if p.p2() < p2 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= cfg.root_tol {
            if let Some(s) = last.filter(|s| (s.t - mid).abs() <= cfg.root_tol) {
                return Ok(s);
            }
        }
    }
    Err(ScqError::NoConvergence(cfg.max_iter))
}
