use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ScqError};

/// Algebraic least-squares circle, or a line when the points are collinear
/// (then `radius` is infinite and `center` is `None`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleFit {
    pub center: Option<Complex64>,
    pub radius: f64,
    /// Largest distance of an input point from the fitted curve.
    pub max_residual: f64,
    /// For lines: a point on the line and its unit direction.
    pub line: Option<(Complex64, Complex64)>,
}

impl CircleFit {
    pub fn curvature(&self) -> f64 {
        if self.radius.is_finite() {
            1.0 / self.radius
        } else {
            0.0
        }
    }

    /// Curvature signed positive when the centre lies on the same side of
    /// the curve at `on` as `inside`.
    pub fn signed_curvature(&self, on: Complex64, inside: Complex64) -> f64 {
        match self.center {
            Some(c) => {
                let side = ((c - on) * (inside - on).conj()).re;
                self.curvature().copysign(side)
            }
            None => 0.0,
        }
    }
}

/// Minimises `Σ (A|p|² + B x + C y + D)²` over unit `(A, B, C, D)` after
/// centring and scaling the points, which makes the fit equivariant under
/// rigid motions.
pub fn fit_circle(points: &[Complex64]) -> Result<CircleFit> {
    let mut distinct: Vec<Complex64> = Vec::with_capacity(points.len());
    for &p in points {
        if !p.re.is_finite() || !p.im.is_finite() {
            return Err(ScqError::Degenerate("non-finite point".into()));
        }
        if !distinct
            .iter()
            .any(|&q| (q - p).norm() <= 1e-14 * (1.0 + p.norm()))
        {
            distinct.push(p);
        }
        if distinct.len() >= 3 {
            break;
        }
    }
    if distinct.len() < 3 {
        return Err(ScqError::Degenerate(format!(
            "circle fit needs 3 distinct points, got {}",
            distinct.len()
        )));
    }

    let n = points.len();
    let mean = points.iter().sum::<Complex64>() / n as f64;
    let scale = (points.iter().map(|p| (p - mean).norm_sqr()).sum::<f64>() / n as f64).sqrt();
    let local: Vec<Complex64> = points.iter().map(|p| (p - mean) / scale).collect();

    let mut a = DMatrix::<f64>::zeros(n.max(4), 4);
    for (i, p) in local.iter().enumerate() {
        a[(i, 0)] = p.norm_sqr();
        a[(i, 1)] = p.re;
        a[(i, 2)] = p.im;
        a[(i, 3)] = 1.0;
    }
    let svd = a.svd(false, true);
    let v_t = svd
        .v_t
        .ok_or_else(|| ScqError::Degenerate("SVD failed".into()))?;
    let k = (0..4)
        .min_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]))
        .unwrap();
    let (qa, qb, qc, qd) = (v_t[(k, 0)], v_t[(k, 1)], v_t[(k, 2)], v_t[(k, 3)]);

    if qa.abs() <= 1e-12 * qb.hypot(qc) {
        let normal = Complex64::new(qb, qc);
        let unit = normal / normal.norm();
        let foot = -qd / normal.norm() * unit;
        let max_residual = local
            .iter()
            .map(|p| ((p - foot) * unit.conj()).re.abs())
            .fold(0.0, f64::max)
            * scale;
        let direction = unit * Complex64::i();
        return Ok(CircleFit {
            center: None,
            radius: f64::INFINITY,
            max_residual,
            line: Some((mean + foot * scale, direction)),
        });
    }

    let c = Complex64::new(-qb / (2.0 * qa), -qc / (2.0 * qa));
    let r2 = c.norm_sqr() - qd / qa;
    if !(r2 > 0.0) {
        return Err(ScqError::Degenerate(
            "fitted circle has no real radius".into(),
        ));
    }
    let r = r2.sqrt();
    let max_residual = local
        .iter()
        .map(|p| ((p - c).norm() - r).abs())
        .fold(0.0, f64::max)
        * scale;
    Ok(CircleFit {
        center: Some(mean + c * scale),
        radius: r * scale,
        max_residual,
        line: None,
    })
}
