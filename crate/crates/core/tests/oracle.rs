use std::f64::consts::{PI, TAU};

use proptest::prelude::*;
use scqmap_core::oracle::{fit_circle, ivp_solve, schwarzian_direct, schwarzian_fd_extrapolated};
use scqmap_core::scq::schwarzian_r;
use scqmap_core::Complex64;

fn arc(center: Complex64, radius: f64, from: f64, to: f64, count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|k| {
            center
                + Complex64::from_polar(radius, from + (to - from) * k as f64 / (count - 1) as f64)
        })
        .collect()
}

proptest! {
    #[test]
    fn circle_fit_is_invariant_under_rigid_motion(
        r in 0.2..5.0f64, from in 0.0..3.0f64, span in 0.3..2.0f64,
        rot in 0.0..TAU, dx in -10.0..10.0f64, dy in -10.0..10.0f64,
    ) {
        let pts: Vec<Complex64> = arc(Complex64::new(0.3, -0.7), r, from, from + span, 40)
            .into_iter()
            .enumerate()
            .map(|(k, p)| p * (1.0 + 1e-6 * ((k * 7919) % 13) as f64))
            .collect();
        let motion = Complex64::from_polar(1.0, rot);
        let moved: Vec<Complex64> = pts.iter().map(|p| motion * p + Complex64::new(dx, dy)).collect();
        let (a, b) = (fit_circle(&pts).unwrap(), fit_circle(&moved).unwrap());
        prop_assert!((a.radius - b.radius).abs() <= 1e-9 * a.radius.max(1.0));
        let ca = motion * a.center.unwrap() + Complex64::new(dx, dy);
        prop_assert!((ca - b.center.unwrap()).norm() <= 1e-9 * a.radius.max(1.0));
    }
}

#[test]
fn collinear_points_fit_a_line() {
    let pts: Vec<Complex64> = (0..10)
        .map(|k| Complex64::new(k as f64, 2.0 * k as f64 + 1.0))
        .collect();
    let fit = fit_circle(&pts).unwrap();
    assert!(fit.center.is_none() && fit.line.is_some());
    assert_eq!(fit.curvature(), 0.0);
}

#[test]
fn ivp_tolerance_halving_is_self_consistent() {
    for (x, lambda) in [(0.1, 1.0), (0.25, -0.5), (0.4, 0.3)] {
        let mut last = ivp_solve(x * PI, lambda, 1e-8).unwrap();
        for tol in [1e-10, 1e-12] {
            let next = ivp_solve(x * PI, lambda, tol).unwrap();
            let diff = (next.0 - last.0).abs().max((next.1 - last.1).abs());
            assert!(diff <= 1e5 * tol, "t={x}pi tol={tol}: {diff:e}");
            last = next;
        }
    }
}

#[test]
fn pole_form_matches_factored_form() {
    for k in 0..30 {
        let z = Complex64::from_polar(0.03 * k as f64, 0.7 * k as f64);
        let (t, l) = (0.3 + 0.03 * k as f64, -1.0 + 0.07 * k as f64);
        let a = schwarzian_direct(t, l, z);
        let b = schwarzian_r(t, l, z).unwrap();
        assert!((a - b).norm() <= 1e-12 * b.norm().max(1.0));
    }
}

#[test]
fn finite_difference_schwarzian_of_tangent() {
    // S(tan z) = 2
    let z = Complex64::new(0.2, 0.1);
    let s = schwarzian_fd_extrapolated(|w| Ok(w.tan()), z, 8e-3).unwrap();
    assert!((s - Complex64::new(2.0, 0.0)).norm() < 1e-6, "{s}");
}
