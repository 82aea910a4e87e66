use crate::error::{Result, ScqError};

use super::tableau::{evaluate_kappa, SppsTableau};

/// Geometric descriptors of the image quadrilateral of `f` and of the
/// normalised map `g = f / w₁`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ScqGeometry {
    /// `f(1)`.
    pub w1: f64,
    /// `Im f(i)`.
    pub w2_im: f64,
    /// Imaginary part of the upper-edge midpoint of `g`.
    pub p2: f64,
    /// Right-edge curvature of `f`.
    pub kappa: f64,
    /// Right-edge curvature of `g`.
    pub kappa1: f64,
    /// Upper-edge curvature of `g`.
    pub kappa2: f64,
}

fn quotient(y1: f64, y2: f64, scale: f64, t: f64, lambda: f64) -> Result<f64> {
    if y1 == 0.0 || y1.abs() <= f64::EPSILON * scale {
        return Err(ScqError::EdgeAtInfinity { t, lambda });
    }
    Ok(y2 / y1)
}

/// Geometry at `(t, λ)`. The upper edge is read off the quarter-turn map
/// `-i f(iz)`, whose Schwarzian is `R_{π/2-t, -λ}`, so `tab_rot` must be
/// the tableau for `π/2 - t` at the same resolution.
pub fn geometry(tab_t: &SppsTableau, tab_rot: &SppsTableau, lambda: f64) -> Result<ScqGeometry> {
    let t = tab_t.t();
    if (tab_rot.t() - super::rotated(t)).abs() > 1e-12 {
        return Err(ScqError::InvalidArgument(format!(
            "rotated tableau has t = {}, expected {}",
            tab_rot.t(),
            super::rotated(t)
        )));
    }
    if tab_rot.grid() != tab_t.grid() || tab_rot.order() != tab_t.order() {
        return Err(ScqError::InvalidArgument(
            "tableaux differ in resolution".into(),
        ));
    }

    let (y1, y2) = tab_t.right_end(lambda);
    let w1 = quotient(
        y1,
        y2,
        tab_t.boundary_series().y1.abs_sum(lambda),
        t,
        lambda,
    )?;
    let (y1r, y2r) = tab_rot.right_end(-lambda);
    let w2_im = quotient(
        y1r,
        y2r,
        tab_rot.boundary_series().y1.abs_sum(-lambda),
        tab_rot.t(),
        -lambda,
    )?;

    let kappa = evaluate_kappa(tab_t, lambda);
    let kappa_top = evaluate_kappa(tab_rot, -lambda);
    Ok(ScqGeometry {
        w1,
        w2_im,
        p2: w2_im / w1,
        kappa,
        kappa1: kappa * w1,
        kappa2: kappa_top * w1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn square_at_quarter_pi() {
        let tab = SppsTableau::build(FRAC_PI_4, 60, 20).unwrap();
        let g = geometry(&tab, &tab, 0.0).unwrap();
        assert!((g.p2 - 1.0).abs() < 1e-12);
        assert!(g.kappa1.abs() < 1e-15);
        assert!((g.w1 - g.w2_im).abs() < 1e-14);
    }

    #[test]
    fn mismatched_rotation_is_rejected() {
        let a = SppsTableau::build(0.3, 30, 10).unwrap();
        let b = SppsTableau::build(0.4, 30, 10).unwrap();
        assert!(geometry(&a, &b, 0.0).is_err());
        let c = SppsTableau::build(super::super::rotated(0.3), 60, 10).unwrap();
        assert!(geometry(&a, &c, 0.0).is_err());
    }
}
