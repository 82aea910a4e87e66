//! Mathematics of symmetric right circular-arc quadrilaterals: the
//! accessory parameters, the Schwarzian coefficient functions, the canonical
//! rectangle map and the spectral-parameter power series built on it.

mod geometry;
mod params;
mod tableau;

pub use geometry::{geometry, ScqGeometry};
pub use params::{
    check_angle, lambda_from_s, lambda_infinity, psi0, psi0_real, psi1, psi1_on_grid, psi1_real,
    s_from_lambda, schwarzian_r, y_infinity, y_infinity_end, y_infinity_on_grid, y_infinity_prime,
    AccessoryParams,
};
pub use tableau::{
    boundary_value_series, build_tableau, curvature_series, evaluate_kappa, BoundarySeries,
    SppsTableau,
};

/// `π/2 - t`, the parameter of the map rotated by a quarter turn.
pub fn rotated(t: f64) -> f64 {
    std::f64::consts::FRAC_PI_2 - t
}
