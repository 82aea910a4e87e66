use num_complex::Complex64;

use crate::error::{Result, ScqError};

/// The Schwarzian of the map written as four double poles at `±e^{±it}`
/// with weight 3/8 and four simple poles whose residues are `±c` at
/// `±e^{it}` and `±c̄` at `±e^{-it}`, `c = e^{-it}(-3/8 + iλ)`.
pub fn schwarzian_direct(t: f64, lambda: f64, z: Complex64) -> Complex64 {
    let a = Complex64::from_polar(1.0, t);
    let c = a.conj() * Complex64::new(-0.375, lambda);
    let mut s = Complex64::new(0.0, 0.0);
    for v in [a, -a, a.conj(), -a.conj()] {
        let d = z - v;
        s += 0.375 / (d * d);
    }
    s += c / (z - a) - c / (z + a) + c.conj() / (z - a.conj()) - c.conj() / (z + a.conj());
    s
}

fn rhs(t: f64, lambda: f64, x: f64, state: [f64; 2]) -> [f64; 2] {
    let r = schwarzian_direct(t, lambda, Complex64::new(x, 0.0)).re;
    [state[1], -0.5 * r * state[0]]
}

fn rk4(t: f64, lambda: f64, x: f64, h: f64, s: [f64; 2]) -> [f64; 2] {
    let add = |s: [f64; 2], k: [f64; 2], c: f64| [s[0] + c * k[0], s[1] + c * k[1]];
    let k1 = rhs(t, lambda, x, s);
    let k2 = rhs(t, lambda, x + 0.5 * h, add(s, k1, 0.5 * h));
    let k3 = rhs(t, lambda, x + 0.5 * h, add(s, k2, 0.5 * h));
    let k4 = rhs(t, lambda, x + h, add(s, k3, h));
    [
        s[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        s[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    ]
}

/// `(y(1), y'(1))` for `y'' = -(S/2) y`, `y(0) = 1`, `y'(0) = 0` on the real
/// segment, by step-doubling RK4 with local extrapolation; each accepted
/// step has estimated local error at most `tol`.
pub fn ivp_solve(t: f64, lambda: f64, tol: f64) -> Result<(f64, f64)> {
    if !(t > 0.0 && t < std::f64::consts::FRAC_PI_2) {
        return Err(ScqError::AngleOutOfRange(t));
    }
    if !(tol > 0.0) {
        return Err(ScqError::InvalidArgument(format!("tol = {tol}")));
    }
    let mut x = 0.0;
    let mut s = [1.0, 0.0];
    let mut h: f64 = 1e-2;
    while x < 1.0 {
        h = h.min(1.0 - x);
        if h < 1e-14 {
            return Err(ScqError::StepUnderflow(x));
        }
        let full = rk4(t, lambda, x, h, s);
        let half = rk4(t, lambda, x, 0.5 * h, s);
        let two = rk4(t, lambda, x + 0.5 * h, 0.5 * h, half);
        let err = ((two[0] - full[0]).abs()).max((two[1] - full[1]).abs()) / 15.0;
        if err <= tol {
            s = [
                two[0] + (two[0] - full[0]) / 15.0,
                two[1] + (two[1] - full[1]) / 15.0,
            ];
            x = if 1.0 - (x + h) < 1e-15 { 1.0 } else { x + h };
        }
        let factor = if err == 0.0 {
            4.0
        } else {
            (0.9 * (tol / err).powf(0.2)).clamp(0.2, 4.0)
        };
        h *= factor;
    }
    Ok((s[0], s[1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rectangle_end_values() {
        for &t in &[0.3f64, 0.785, 1.2] {
            let li = 0.25 / (2.0 * t).tan();
            let (y, yp) = ivp_solve(t, li, 1e-13).unwrap();
            assert!((y - (2.0 * t.sin()).sqrt()).abs() < 1e-10, "{y}");
            assert!((yp - (0.5 * t.sin()).sqrt()).abs() < 1e-10, "{yp}");
        }
    }

    #[test]
    fn real_on_the_real_axis() {
        let s = schwarzian_direct(0.4, 1.3, Complex64::new(0.7, 0.0));
        assert!(s.im.abs() < 1e-13 * s.re.abs());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ivp_solve(0.0, 0.0, 1e-8).is_err());
        assert!(ivp_solve(0.5, 0.0, 0.0).is_err());
    }
}
