use num_complex::Complex64;

use crate::error::{Result, ScqError};

/// `S_f(z) = f'''/f' - (3/2)(f''/f')²` from five samples of `f` on the
/// horizontal stencil `z + kh`, `k = -2..=2`; the error is `O(h²)`.
pub fn schwarzian_fd<F>(f: F, z: Complex64, h: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if !(h > 0.0) || z.norm() + 2.0 * h >= 1.0 {
        return Err(ScqError::InvalidArgument(format!(
            "stencil of width {h} at {z} leaves the disk"
        )));
    }
    let p = |k: f64| f(z + Complex64::new(k * h, 0.0));
    let (m2, m1, c, p1, p2) = (p(-2.0)?, p(-1.0)?, p(0.0)?, p(1.0)?, p(2.0)?);
    let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let d2 = (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
    let d3 = (-m2 + 2.0 * m1 - 2.0 * p1 + p2) / (2.0 * h * h * h);
    if d1.norm() == 0.0 {
        return Err(ScqError::Singularity { re: z.re, im: z.im });
    }
    let q = d2 / d1;
    Ok(d3 / d1 - 1.5 * q * q)
}

/// Richardson combination `(4 S(h/2) - S(h)) / 3` of two stencils, with
/// error `O(h⁴)`.
pub fn schwarzian_fd_extrapolated<F>(f: F, z: Complex64, h: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let coarse = schwarzian_fd(&f, z, h)?;
    let fine = schwarzian_fd(&f, z, 0.5 * h)?;
    Ok((4.0 * fine - coarse) / 3.0)
}
