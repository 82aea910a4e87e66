use log::warn;

use crate::error::Result;
use crate::quadrature::{iterated_integrals, Grid, GridFunction};
use crate::series::{PowerSeries, DEFAULT_TAIL_TOL};

use super::params::{
    check_angle, lambda_infinity, psi1_on_grid, y_infinity_end, y_infinity_on_grid,
};

/// Precomputed iterated-integral endpoint values for one `(t, M, N)`.
///
/// Building a tableau costs `O(MN)`; afterwards every quantity at any `λ`
/// is a power-series evaluation in `λ - λ∞`.
#[derive(Debug, Clone)]
pub struct SppsTableau {
    t: f64,
    grid: Grid,
    order: usize,
    lambda_inf: f64,
    y_inf: GridFunction,
    y_inf_end: (f64, f64),
    xt_end: Vec<f64>,
    x_end: Vec<f64>,
    xt_grids: Option<Vec<GridFunction>>,
    x_grids: Option<Vec<GridFunction>>,
    tail_tol: f64,
    kappa: PowerSeries,
    boundary: BoundarySeries,
}

/// Power series of the boundary values of the two SPPS solutions at `z = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySeries {
    pub y1: PowerSeries,
    pub y1_prime: PowerSeries,
    pub y2: PowerSeries,
    pub y2_prime: PowerSeries,
}

impl SppsTableau {
    /// `m` grid intervals, series truncated after the `(λ-λ∞)^n` term.
    pub fn build(t: f64, m: usize, n: usize) -> Result<Self> {
        Self::build_impl(t, m, n, false)
    }

    /// Like [`SppsTableau::build`] but keeps every iterated integral on the grid.
    pub fn build_with_grids(t: f64, m: usize, n: usize) -> Result<Self> {
        Self::build_impl(t, m, n, true)
    }

    fn build_impl(t: f64, m: usize, n: usize, keep_grids: bool) -> Result<Self> {
        check_angle(t)?;
        let grid = Grid::new(m)?;
        let y_inf = y_infinity_on_grid(t, grid)?;
        let psi1 = psi1_on_grid(t, grid)?;
        let y_sq = y_inf.mul(&y_inf)?;
        let weight = psi1.mul(&y_sq)?;
        let inv_y_sq = y_sq.map(|v| 1.0 / v)?;

        let xt = iterated_integrals(&weight, &inv_y_sq, 2 * n + 1)?;
        let x = iterated_integrals(&inv_y_sq, &weight, 2 * n + 2)?;
        let xt_end: Vec<f64> = xt.iter().map(GridFunction::last).collect();
        let x_end: Vec<f64> = x.iter().map(GridFunction::last).collect();

        let (xt_grids, x_grids) = if keep_grids {
            (Some(xt), Some(x))
        } else {
            (None, None)
        };
        Ok(Self::assemble(
            t, grid, n, y_inf, xt_end, x_end, xt_grids, x_grids,
        ))
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        t: f64,
        grid: Grid,
        order: usize,
        y_inf: GridFunction,
        xt_end: Vec<f64>,
        x_end: Vec<f64>,
        xt_grids: Option<Vec<GridFunction>>,
        x_grids: Option<Vec<GridFunction>>,
    ) -> Self {
        let lambda_inf = lambda_infinity(t).expect("angle checked by caller");
        let y_inf_end = y_infinity_end(t);
        let kappa = kappa_coefficients(lambda_inf, order, &xt_end);
        let boundary = boundary_coefficients(lambda_inf, order, y_inf_end, &xt_end, &x_end);
        Self {
            t,
            grid,
            order,
            lambda_inf,
            y_inf,
            y_inf_end,
            xt_end,
            x_end,
            xt_grids,
            x_grids,
            tail_tol: DEFAULT_TAIL_TOL,
            kappa,
            boundary,
        }
    }

    /// Rebuilds a tableau around externally supplied endpoint values.
    ///
    /// Used by the verification harness to inject corrupted tableaux; the
    /// values must have lengths `2N + 1` and `2N + 2`.
    pub fn from_endpoint_values(
        t: f64,
        m: usize,
        xt_end: Vec<f64>,
        x_end: Vec<f64>,
    ) -> Result<Self> {
        check_angle(t)?;
        let grid = Grid::new(m)?;
        if xt_end.is_empty() || xt_end.len().is_multiple_of(2) || x_end.len() != xt_end.len() + 1 {
            return Err(crate::error::ScqError::InvalidArgument(format!(
                "endpoint lengths {} and {} do not describe a tableau",
                xt_end.len(),
                x_end.len()
            )));
        }
        let order = (xt_end.len() - 1) / 2;
        let y_inf = y_infinity_on_grid(t, grid)?;
        Ok(Self::assemble(
            t, grid, order, y_inf, xt_end, x_end, None, None,
        ))
    }

    pub fn with_tail_tolerance(mut self, tol: f64) -> Self {
        self.tail_tol = tol;
        self
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    /// Series truncation order `N`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn lambda_inf(&self) -> f64 {
        self.lambda_inf
    }

    pub fn y_inf(&self) -> &GridFunction {
        &self.y_inf
    }

    pub fn y_inf_end(&self) -> (f64, f64) {
        self.y_inf_end
    }

    /// `X̃_n(1)` for `n = 0..=2N`.
    pub fn xt_end(&self) -> &[f64] {
        &self.xt_end
    }

    /// `X_n(1)` for `n = 0..=2N+1`.
    pub fn x_end(&self) -> &[f64] {
        &self.x_end
    }

    pub fn xt_grids(&self) -> Option<&[GridFunction]> {
        self.xt_grids.as_deref()
    }

    pub fn x_grids(&self) -> Option<&[GridFunction]> {
        self.x_grids.as_deref()
    }

    pub fn tail_tol(&self) -> f64 {
        self.tail_tol
    }

    pub fn kappa_series(&self) -> &PowerSeries {
        &self.kappa
    }

    pub fn boundary_series(&self) -> &BoundarySeries {
        &self.boundary
    }

    /// Offset from `λ∞` within which both the curvature and the `y₁(1)`
    /// series pass the tail check.
    pub fn validated_radius(&self) -> f64 {
        self.kappa
            .validated_radius(self.tail_tol)
            .min(self.boundary.y1.validated_radius(self.tail_tol))
            .min(self.boundary.y2.validated_radius(self.tail_tol))
    }

    /// `w₁ = f(1) = y₂(1) / y₁(1)` together with `y₁(1)`.
    pub(crate) fn right_end(&self, lambda: f64) -> (f64, f64) {
        let y1 = self.boundary.y1.eval(lambda);
        let y2 = self.boundary.y2.eval(lambda);
        (y1, y2)
    }
}

fn kappa_coefficients(center: f64, order: usize, xt: &[f64]) -> PowerSeries {
    let odd = |k: isize| if k < 0 { 0.0 } else { xt[k as usize] };
    let coeffs = (0..=order)
        .map(|n| {
            let s: f64 = (0..=n)
                .map(|k| xt[2 * k] * odd(2 * (n as isize - k as isize) - 1))
                .sum();
            -2.0 * s
        })
        .collect();
    PowerSeries::new(center, coeffs)
}

fn boundary_coefficients(
    center: f64,
    order: usize,
    (y_end, yp_end): (f64, f64),
    xt: &[f64],
    x: &[f64],
) -> BoundarySeries {
    let y1 = (0..=order).map(|k| y_end * xt[2 * k]).collect();
    let y1_prime = (0..=order)
        .map(|k| {
            let lead = yp_end * xt[2 * k];
            if k == 0 {
                lead
            } else {
                lead + xt[2 * k - 1] / y_end
            }
        })
        .collect();
    let y2 = (0..=order).map(|k| y_end * x[2 * k + 1]).collect();
    let y2_prime = (0..=order)
        .map(|k| yp_end * x[2 * k + 1] + x[2 * k] / y_end)
        .collect();
    BoundarySeries {
        y1: PowerSeries::new(center, y1),
        y1_prime: PowerSeries::new(center, y1_prime),
        y2: PowerSeries::new(center, y2),
        y2_prime: PowerSeries::new(center, y2_prime),
    }
}

pub fn build_tableau(t: f64, m: usize, n: usize) -> Result<SppsTableau> {
    SppsTableau::build(t, m, n)
}

/// Coefficients `a_n = -2 Σ_k X̃_{2k}(1) X̃_{2(n-k)-1}(1)` of `κ(λ)`.
pub fn curvature_series(tab: &SppsTableau) -> PowerSeries {
    tab.kappa.clone()
}

pub fn boundary_value_series(tab: &SppsTableau) -> BoundarySeries {
    tab.boundary.clone()
}

/// Right-edge curvature `κ(λ)`; warns when the truncated tail exceeds the
/// tableau's tolerance.
pub fn evaluate_kappa(tab: &SppsTableau, lambda: f64) -> f64 {
    if !tab.kappa.is_converged_at(lambda, tab.tail_tol) {
        warn!(
            "kappa series at t = {}, lambda = {} has tail {:.3e}; increase N",
            tab.t,
            lambda,
            tab.kappa.tail(lambda)
        );
    }
    tab.kappa.eval(lambda)
}

impl BoundarySeries {
    /// `y₁(1) (y₁(1) - 2 y₁'(1))` assembled from the boundary values.
    pub fn kappa_from_boundary(&self, lambda: f64) -> f64 {
        let y1 = self.y1.eval(lambda);
        let y1p = self.y1_prime.eval(lambda);
        y1 * (y1 - 2.0 * y1p)
    }
}
