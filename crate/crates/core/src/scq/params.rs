use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Result, ScqError};
use crate::quadrature::{Grid, GridFunction};

const THREE_EIGHTHS: f64 = 0.375;

pub fn check_angle(t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 && t < FRAC_PI_2 {
        Ok(())
    } else {
        Err(ScqError::AngleOutOfRange(t))
    }
}

/// Spectral parameter of the canonical rectangle map, `(1/4) cot 2t`.
pub fn lambda_infinity(t: f64) -> Result<f64> {
    check_angle(t)?;
    let two_t = 2.0 * t;
    Ok(0.25 * two_t.cos() / two_t.sin())
}

/// Accessory parameters of the Schwarzian, in both the `(t, λ)` and the
/// original `(t, s)` parametrisations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccessoryParams {
    pub t: f64,
    pub lambda: f64,
    pub s: f64,
    pub rho: f64,
    pub c: Complex64,
}

/// Solves `λ = (3/8) tan(s + t)` for `s ∈ (π/2 - t, 3π/2 - t)`.
pub fn s_from_lambda(t: f64, lambda: f64) -> Result<AccessoryParams> {
    check_angle(t)?;
    if !lambda.is_finite() {
        return Err(ScqError::InvalidArgument(format!("lambda = {lambda}")));
    }
    let s = PI + (lambda / THREE_EIGHTHS).atan() - t;
    let rho = THREE_EIGHTHS.hypot(lambda);
    let c = Complex64::from_polar(1.0, -t) * Complex64::new(-THREE_EIGHTHS, lambda);
    Ok(AccessoryParams {
        t,
        lambda,
        s,
        rho,
        c,
    })
}

/// Inverse of [`s_from_lambda`] through `ρ = -3 / (8 cos(s + t))` and
/// `λ = ε √(ρ² - (3/8)²)`.
pub fn lambda_from_s(t: f64, s: f64) -> Result<f64> {
    check_angle(t)?;
    let phase = s + t;
    if !(phase > FRAC_PI_2 && phase < 3.0 * FRAC_PI_2) {
        return Err(ScqError::InvalidArgument(format!(
            "s = {s} outside (pi/2 - t, 3pi/2 - t)"
        )));
    }
    let rho = -THREE_EIGHTHS / phase.cos();
    let magnitude = (rho * rho - THREE_EIGHTHS * THREE_EIGHTHS).max(0.0).sqrt();
    let eps = if phase < PI {
        -1.0
    } else if phase > PI {
        1.0
    } else {
        0.0
    };
    Ok(eps * magnitude)
}

fn vertex_squares(t: f64) -> (Complex64, Complex64) {
    let a2 = Complex64::from_polar(1.0, 2.0 * t);
    (a2, a2.conj())
}

fn check_pole(z2: Complex64, a2: Complex64, z: Complex64) -> Result<()> {
    if (z2 - a2).norm() <= 1e-15 {
        Err(ScqError::Singularity { re: z.re, im: z.im })
    } else {
        Ok(())
    }
}

/// `ψ₀(z) = (3/4) (a²/(z² - a²)² + ā²/(z² - ā²)²)` with `a = e^{it}`.
pub fn psi0(t: f64, z: Complex64) -> Result<Complex64> {
    let (a2, ab2) = vertex_squares(t);
    let z2 = z * z;
    check_pole(z2, a2, z)?;
    check_pole(z2, ab2, z)?;
    let p = z2 - a2;
    let q = z2 - ab2;
    Ok(0.75 * (a2 / (p * p) + ab2 / (q * q)))
}

/// `ψ₁(z) = -i (1/(z² - a²) - 1/(z² - ā²))`.
pub fn psi1(t: f64, z: Complex64) -> Result<Complex64> {
    let (a2, ab2) = vertex_squares(t);
    let z2 = z * z;
    check_pole(z2, a2, z)?;
    check_pole(z2, ab2, z)?;
    Ok(-Complex64::i() * ((z2 - a2).inv() - (z2 - ab2).inv()))
}

/// `ψ₀` on the real axis, `(3/2) Re(a²/(z² - a²)²)`.
pub fn psi0_real(t: f64, z: f64) -> f64 {
    let (a2, _) = vertex_squares(t);
    let p = Complex64::new(z * z, 0.0) - a2;
    1.5 * (a2 / (p * p)).re
}

/// `ψ₁` on the real axis, `2 sin 2t / (z⁴ - 2 cos(2t) z² + 1)`.
pub fn psi1_real(t: f64, z: f64) -> f64 {
    2.0 * (2.0 * t).sin() / quartic(t, z)
}

fn quartic(t: f64, z: f64) -> f64 {
    let z2 = z * z;
    z2 * z2 - 2.0 * (2.0 * t).cos() * z2 + 1.0
}

/// `R_{t,λ} = 2ψ₀ - 2λψ₁`, the Schwarzian derivative of the map.
pub fn schwarzian_r(t: f64, lambda: f64, z: Complex64) -> Result<Complex64> {
    check_angle(t)?;
    Ok(2.0 * psi0(t, z)? - 2.0 * lambda * psi1(t, z)?)
}

/// Canonical solution `y∞(z) = (1 - 2 cos(2t) z² + z⁴)^{1/4}`.
pub fn y_infinity(t: f64, z: f64) -> f64 {
    quartic(t, z).powf(0.25)
}

pub fn y_infinity_prime(t: f64, z: f64) -> f64 {
    let d = quartic(t, z);
    let dd = 4.0 * z * z * z - 4.0 * (2.0 * t).cos() * z;
    0.25 * dd / d.powf(0.75)
}

/// `(y∞(1), y∞'(1)) = (√(2 sin t), √(sin t / 2))`.
pub fn y_infinity_end(t: f64) -> (f64, f64) {
    let s = t.sin();
    ((2.0 * s).sqrt(), (0.5 * s).sqrt())
}

pub fn psi1_on_grid(t: f64, grid: Grid) -> Result<GridFunction> {
    check_angle(t)?;
    GridFunction::from_fn(grid, |z| psi1_real(t, z))
}

pub fn y_infinity_on_grid(t: f64, grid: Grid) -> Result<GridFunction> {
    check_angle(t)?;
    GridFunction::from_fn(grid, |z| y_infinity(t, z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn lambda_infinity_values() {
        assert!(lambda_infinity(FRAC_PI_4).unwrap().abs() < 1e-16);
        assert!((lambda_infinity(PI / 8.0).unwrap() - 0.25).abs() < 1e-15);
        assert!((lambda_infinity(3.0 * PI / 8.0).unwrap() + 0.25).abs() < 1e-15);
        assert!(lambda_infinity(0.0).is_err());
        assert!(lambda_infinity(FRAC_PI_2).is_err());
        assert!(lambda_infinity(2.0).is_err());
        assert!(lambda_infinity(f64::NAN).is_err());
    }

    #[test]
    fn zero_lambda_is_the_midpoint_branch() {
        let t = 0.3;
        let p = s_from_lambda(t, 0.0).unwrap();
        assert!((p.s - (PI - t)).abs() < 1e-15);
        assert_eq!(p.rho, 0.375);
    }

    #[test]
    fn large_lambda_approaches_upper_end() {
        let t = 0.4;
        let p = s_from_lambda(t, 1e12).unwrap();
        assert!((p.s - (1.5 * PI - t)).abs() < 1e-9);
        assert!(p.rho > 1e11);
        let q = s_from_lambda(t, -1e12).unwrap();
        assert!((q.s - (FRAC_PI_2 - t)).abs() < 1e-9);
    }

    #[test]
    fn direct_evaluation_at_quarter_pi() {
        let p = s_from_lambda(FRAC_PI_4, 1.0).unwrap();
        assert!(((p.s + FRAC_PI_4).tan() - 8.0 / 3.0).abs() < 1e-12);
        let expected = Complex64::from_polar(1.0, -FRAC_PI_4) * Complex64::new(-0.375, 1.0);
        assert!((p.c - expected).norm() < 1e-15);
        // |c| = ρ and ρ = -3 / (8 cos(s + t))
        assert!((p.c.norm() - p.rho).abs() < 1e-15);
        assert!((p.rho + 0.375 / (p.s + FRAC_PI_4).cos()).abs() < 1e-12);
        // the phase of c is 2π - 2t - s, not s
        let phase = 2.0 * PI - 2.0 * FRAC_PI_4 - p.s;
        assert!((p.c.arg().rem_euclid(2.0 * PI) - phase.rem_euclid(2.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn s_lambda_round_trip() {
        for &t in &[0.1, 0.5, 1.2] {
            for &l in &[-7.0, -0.4, 0.0, 0.3, 2.5] {
                let p = s_from_lambda(t, l).unwrap();
                assert!(p.s > FRAC_PI_2 - t && p.s < 1.5 * PI - t);
                assert!((lambda_from_s(t, p.s).unwrap() - l).abs() < 1e-12 * (1.0 + l.abs()));
            }
        }
    }

    #[test]
    fn psi1_values() {
        assert!((psi1_real(FRAC_PI_4, 0.0) - 2.0).abs() < 1e-15);
        assert!((psi1_real(FRAC_PI_4, 1.0) - 1.0).abs() < 1e-15);
        for &t in &[0.05, 0.7, 1.5] {
            for k in 0..=20 {
                let z = k as f64 / 20.0;
                let complex = psi1(t, Complex64::new(z, 0.0)).unwrap();
                assert!((complex.re - psi1_real(t, z)).abs() < 1e-10 * complex.re.abs().max(1.0));
                assert!(complex.im.abs() < 1e-10);
                assert!(psi1_real(t, z) > 0.0);
            }
        }
    }

    #[test]
    fn psi0_real_matches_complex() {
        for &t in &[0.2, 0.9] {
            for k in 0..=10 {
                let z = k as f64 / 10.0;
                let c = psi0(t, Complex64::new(z, 0.0)).unwrap();
                assert!((c.re - psi0_real(t, z)).abs() < 1e-12 * c.re.abs().max(1.0));
            }
        }
    }

    #[test]
    fn y_infinity_values() {
        assert_eq!(y_infinity(0.3, 0.0), 1.0);
        assert!((y_infinity(PI / 6.0, 1.0) - 1.0).abs() < 1e-15);
        assert!((y_infinity(FRAC_PI_4, 1.0) - 2f64.powf(0.25)).abs() < 1e-15);
        for &t in &[0.1, 0.6, 1.3] {
            let (y1, yp1) = y_infinity_end(t);
            assert!((y_infinity(t, 1.0) - y1).abs() < 1e-14);
            assert!((y_infinity_prime(t, 1.0) - yp1).abs() < 1e-14);
            assert!((y1 - 2.0 * yp1).abs() < 1e-15);
        }
    }

    #[test]
    fn schwarzian_pole_is_rejected() {
        let t = 0.4;
        let a = Complex64::from_polar(1.0, t);
        assert!(matches!(
            schwarzian_r(t, 0.0, a),
            Err(ScqError::Singularity { .. })
        ));
        assert!(schwarzian_r(t, 0.0, -a.conj()).is_err());
    }

    #[test]
    fn schwarzian_is_real_on_real_axis() {
        for k in 0..10 {
            let z = Complex64::new(k as f64 / 10.0, 0.0);
            let r = schwarzian_r(0.5, 0.7, z).unwrap();
            assert!(r.im.abs() < 1e-12 * r.re.abs().max(1.0));
        }
    }

    #[test]
    fn quarter_turn_symmetry() {
        let t = 0.35;
        let l = 0.8;
        let z = Complex64::new(0.31, -0.42);
        let lhs = schwarzian_r(FRAC_PI_2 - t, -l, Complex64::i() * z).unwrap();
        let rhs = schwarzian_r(t, l, z).unwrap();
        assert!((lhs + rhs).norm() < 1e-12 * rhs.norm());
    }
}
