//! Truncated power series in `(λ - λ∞)`.

use std::ops::{Add, Mul, Neg, Sub};

/// Default relative tolerance for the running tail check.
pub const DEFAULT_TAIL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    center: f64,
    coeffs: Vec<f64>,
}

impl PowerSeries {
    pub fn new(center: f64, coeffs: Vec<f64>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a power series needs at least one coefficient"
        );
        Self { center, coeffs }
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Truncation order `N` (index of the last retained coefficient).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation at `x` (not at the offset `x - center`).
    pub fn eval(&self, x: f64) -> f64 {
        let mu = x - self.center;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * mu + c)
    }

    /// Value and first derivative at `x`.
    pub fn eval_with_derivative(&self, x: f64) -> (f64, f64) {
        let mu = x - self.center;
        let mut p = 0.0;
        let mut dp = 0.0;
        for c in self.coeffs.iter().rev() {
            dp = dp * mu + p;
            p = p * mu + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> PowerSeries {
        if self.coeffs.len() == 1 {
            return PowerSeries::new(self.center, vec![0.0]);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| k as f64 * c)
            .collect();
        PowerSeries::new(self.center, coeffs)
    }

    pub fn scale(&self, s: f64) -> PowerSeries {
        PowerSeries::new(self.center, self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Magnitude of the last retained term at `x`.
    pub fn tail(&self, x: f64) -> f64 {
        let mu = (x - self.center).abs();
        self.coeffs[self.order()].abs() * mu.powi(self.order() as i32)
    }

    /// Sum of term magnitudes at `x`; bounds `|eval(x)|` and sets the scale
    /// for the tail check.
    pub fn abs_sum(&self, x: f64) -> f64 {
        let mu = (x - self.center).abs();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * mu + c.abs())
    }

    /// The running tail check: the last retained term is below `tol` times
    /// the magnitude scale of the series at `x`.
    pub fn is_converged_at(&self, x: f64, tol: f64) -> bool {
        self.tail(x) <= tol * self.abs_sum(x)
    }

    /// Largest offset `r` from the center with `tail ≤ tol · abs_sum`.
    ///
    /// The ratio `|c_N| r^N / Σ|c_k| r^k` is non-decreasing in `r`, so the
    /// admissible set is an interval and bisection on `log r` finds its end.
    pub fn validated_radius(&self, tol: f64) -> f64 {
        const R_MAX: f64 = 1e6;
        if self.order() == 0 || self.coeffs[self.order()] == 0.0 {
            return R_MAX;
        }
        let ok = |r: f64| self.is_converged_at(self.center + r, tol);
        if ok(R_MAX) {
            return R_MAX;
        }
        let mut lo = 0.0_f64;
        let mut hi = R_MAX;
        // the ratio is 0 at r = 0 when the series has a nonzero lower term
        for _ in 0..200 {
            let mid = if lo == 0.0 {
                hi * 1e-3
            } else {
                (lo * hi).sqrt()
            };
            if ok(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-12 * hi {
                break;
            }
        }
        lo
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        assert_eq!(self.center, rhs.center, "series centers differ");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| self.coeffs.get(k).unwrap_or(&0.0) + rhs.coeffs.get(k).unwrap_or(&0.0))
            .collect();
        PowerSeries::new(self.center, coeffs)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;

    fn neg(self) -> PowerSeries {
        self.scale(-1.0)
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        self + &(-rhs)
    }
}

/// Cauchy product truncated to the shorter operand's order.
impl Mul for &PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        assert_eq!(self.center, rhs.center, "series centers differ");
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| (0..=k).map(|j| self.coeffs[j] * rhs.coeffs[k - j]).sum())
            .collect();
        PowerSeries::new(self.center, coeffs)
    }
}
