use crate::error::{Result, ScqError};

const MAX_DEPTH: usize = 60;

/// Adaptive Simpson quadrature with Richardson correction.
pub fn adaptive_quad<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(ScqError::InvalidArgument(format!(
            "adaptive_quad on [{a}, {b}] with tol {tol}"
        )));
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let v = step(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ScqError::NonFinite(0))
    }
}

#[allow(clippy::too_many_arguments)]
fn step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(ScqError::NoConvergence(MAX_DEPTH));
    }
    Ok(step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
        + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
}
