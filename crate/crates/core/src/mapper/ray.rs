use num_complex::Complex64;

use crate::error::{Result, ScqError};
use crate::scq::{psi0, psi1};

/// Integration stops this far short of the unit circle; the last stretch is
/// a Taylor step.
pub const BOUNDARY_OFFSET: f64 = 1e-6;
pub const MIN_STEPS: usize = 50;

/// The solution of `y'' + ψ₀ y = λ ψ₁ y`, `y(0) = 1`, `y'(0) = 0` and the
/// map `f = ∫ y⁻²` along `z = r e^{iθ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RaySolution {
    pub theta: f64,
    pub radii: Vec<f64>,
    pub y: Vec<Complex64>,
    /// `dy/dz` at each radius.
    pub dy: Vec<Complex64>,
    pub f: Vec<Complex64>,
}

impl RaySolution {
    pub fn endpoint(&self) -> Complex64 {
        *self.f.last().expect("ray has samples")
    }
}

#[derive(Clone, Copy)]
struct State {
    y: Complex64,
    /// `dy/dr`.
    yr: Complex64,
    f: Complex64,
}

impl State {
    fn axpy(self, h: f64, k: State) -> State {
        State {
            y: self.y + k.y * h,
            yr: self.yr + k.yr * h,
            f: self.f + k.f * h,
        }
    }
}

struct Ray {
    t: f64,
    lambda: f64,
    dir: Complex64,
}

impl Ray {
    /// `q(z) = λψ₁ - ψ₀`, so `y_zz = q y`.
    fn q(&self, r: f64) -> Result<Complex64> {
        let z = self.dir * r;
        Ok(psi1(self.t, z)? * self.lambda - psi0(self.t, z)?)
    }

    fn deriv(&self, r: f64, s: State) -> Result<State> {
        if !(s.y.norm() > 1e-150) || !s.y.re.is_finite() || !s.y.im.is_finite() {
            return Err(ScqError::CriticalPoint {
                theta: self.dir.arg(),
                r,
            });
        }
        Ok(State {
            y: s.yr,
            yr: self.dir * self.dir * self.q(r)? * s.y,
            f: self.dir / (s.y * s.y),
        })
    }

    fn rk4(&self, r: f64, h: f64, s: State) -> Result<State> {
        let k1 = self.deriv(r, s)?;
        let k2 = self.deriv(r + 0.5 * h, s.axpy(0.5 * h, k1))?;
        let k3 = self.deriv(r + 0.5 * h, s.axpy(0.5 * h, k2))?;
        let k4 = self.deriv(r + h, s.axpy(h, k3))?;
        Ok(State {
            y: s.y + (k1.y + (k2.y + k3.y) * 2.0 + k4.y) * (h / 6.0),
            yr: s.yr + (k1.yr + (k2.yr + k3.yr) * 2.0 + k4.yr) * (h / 6.0),
            f: s.f + (k1.f + (k2.f + k3.f) * 2.0 + k4.f) * (h / 6.0),
        })
    }

    /// States at `r_k = k r_end / steps`, `k = 0..=steps`.
    fn run(&self, r_end: f64, steps: usize) -> Result<Vec<State>> {
        let h = r_end / steps as f64;
        let mut out = Vec::with_capacity(steps + 1);
        let mut s = State {
            y: Complex64::new(1.0, 0.0),
            yr: Complex64::new(0.0, 0.0),
            f: Complex64::new(0.0, 0.0),
        };
        out.push(s);
        for k in 0..steps {
            s = self.rk4(k as f64 * h, h, s)?;
            out.push(s);
        }
        Ok(out)
    }

    /// RK4 with `steps` and `2 steps` steps combined by Richardson
    /// extrapolation at the common radii.
    fn extrapolated(&self, r_end: f64, steps: usize) -> Result<Vec<State>> {
        let coarse = self.run(r_end, steps)?;
        let fine = self.run(r_end, 2 * steps)?;
        Ok(coarse
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let f = fine[2 * k];
                State {
                    y: f.y + (f.y - c.y) / 15.0,
                    yr: f.yr + (f.yr - c.yr) / 15.0,
                    f: f.f + (f.f - c.f) / 15.0,
                }
            })
            .collect())
    }
}

fn check_steps(steps: usize) -> Result<()> {
    if steps < MIN_STEPS {
        return Err(ScqError::InvalidArgument(format!(
            "steps = {steps}, need at least {MIN_STEPS}"
        )));
    }
    Ok(())
}

/// Integrates along the full radius at angle `theta` with `steps` RK4
/// steps up to `r = 1 - δ`, then a second-order Taylor step to `r = 1`.
pub fn integrate_ray(t: f64, lambda: f64, theta: f64, steps: usize) -> Result<RaySolution> {
    crate::scq::check_angle(t)?;
    check_steps(steps)?;
    let ray = Ray {
        t,
        lambda,
        dir: Complex64::from_polar(1.0, theta),
    };
    let r_end = 1.0 - BOUNDARY_OFFSET;
    let states = ray.extrapolated(r_end, steps)?;

    let last = *states.last().expect("non-empty");
    let d = BOUNDARY_OFFSET;
    let yrr = ray.dir * ray.dir * ray.q(r_end)? * last.y;
    let fr = ray.dir / (last.y * last.y);
    let frr = -2.0 * ray.dir * last.yr / (last.y * last.y * last.y);
    let end = State {
        y: last.y + last.yr * d + yrr * (0.5 * d * d),
        yr: last.yr + yrr * d,
        f: last.f + fr * d + frr * (0.5 * d * d),
    };

    let h = r_end / steps as f64;
    let mut radii: Vec<f64> = (0..=steps).map(|k| k as f64 * h).collect();
    radii.push(1.0);
    let all = states.iter().chain(std::iter::once(&end));
    let (mut y, mut dy, mut f) = (Vec::new(), Vec::new(), Vec::new());
    for s in all {
        y.push(s.y);
        dy.push(s.yr / ray.dir);
        f.push(s.f);
    }
    Ok(RaySolution {
        theta,
        radii,
        y,
        dy,
        f,
    })
}

/// `(f(z), y(z))` at an interior point, integrating the radius to `z`.
pub fn map_point(
    t: f64,
    lambda: f64,
    z: Complex64,
    steps: usize,
) -> Result<(Complex64, Complex64)> {
    crate::scq::check_angle(t)?;
    check_steps(steps)?;
    let r = z.norm();
    if r >= 1.0 {
        return Err(ScqError::InvalidArgument(format!(
            "{z} is not inside the disk"
        )));
    }
    if r == 0.0 {
        return Ok((Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)));
    }
    let ray = Ray {
        t,
        lambda,
        dir: z / r,
    };
    let s = *ray.extrapolated(r, steps)?.last().expect("non-empty");
    Ok((s.f, s.y))
}
