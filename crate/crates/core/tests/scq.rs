use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use proptest::prelude::*;
use scqmap_core::oracle::adaptive_quad;
use scqmap_core::scq::{evaluate_kappa, lambda_infinity, rotated, schwarzian_r, SppsTableau};
use scqmap_core::solvers::TableauPair;
use scqmap_core::{Complex64, ScqError};

#[test]
fn lambda_infinity_values() {
    assert!(lambda_infinity(FRAC_PI_4).unwrap().abs() < 1e-16);
    assert!((lambda_infinity(PI / 8.0).unwrap() - 0.25).abs() < 1e-15);
    assert!((lambda_infinity(PI / 6.0).unwrap() - 0.25 / 3f64.sqrt()).abs() < 1e-15);
    assert!(matches!(
        lambda_infinity(0.0),
        Err(ScqError::AngleOutOfRange(_))
    ));
    assert!(matches!(
        lambda_infinity(FRAC_PI_2),
        Err(ScqError::AngleOutOfRange(_))
    ));
}

#[test]
fn first_iterated_integral_is_elliptic() {
    let k1 = adaptive_quad(|z| 1.0 / (1.0 + z.powi(4)).sqrt(), 0.0, 1.0, 1e-14).unwrap();
    assert!((k1 - 0.92704).abs() < 1e-5);
    let tab = SppsTableau::build(FRAC_PI_4, 60, 20).unwrap();
    assert!((tab.x_end()[1] - k1).abs() < 1e-9);
    assert_eq!(tab.x_end()[0], 1.0);
    assert_eq!(tab.xt_end()[0], 1.0);
}

#[test]
fn kappa_at_first_root() {
    let tab = SppsTableau::build(FRAC_PI_4, 60, 30).unwrap();
    assert!((evaluate_kappa(&tab, -0.32219) - 0.8).abs() < 1e-4);
    assert!(evaluate_kappa(&tab, 0.0).abs() < 1e-14);
}

/// `κ` from the curvature series agrees with the one assembled from the
/// boundary values.
#[test]
fn curvature_series_matches_boundary_values() {
    let mut state = 12345u64;
    let mut next = || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let tabs: Vec<SppsTableau> = [0.1, 0.25, 0.4]
        .iter()
        .map(|x| SppsTableau::build(x * PI, 60, 30).unwrap())
        .collect();
    for _ in 0..100 {
        let tab = &tabs[(next() * 3.0) as usize];
        let lambda = tab.lambda_inf() - 1.0 + 2.0 * next();
        let series = tab.kappa_series().eval(lambda);
        let direct = tab.boundary_series().kappa_from_boundary(lambda);
        assert!(
            (series - direct).abs() <= 1e-12 * series.abs().max(1.0),
            "{series} vs {direct}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn quarter_turn_symmetry(x in 0.02..0.48f64, lambda in -3.0..3.0f64, r in 0.0..0.95f64, phi in 0.0..TAU) {
        let t = x * PI;
        let z = Complex64::from_polar(r, phi);
        let a = schwarzian_r(t, lambda, z).unwrap();
        let b = schwarzian_r(rotated(t), -lambda, Complex64::i() * z).unwrap();
        prop_assert!((a + b).norm() <= 1e-12 * a.norm().max(1.0));
    }

    #[test]
    fn real_on_real_axis(x in 0.02..0.48f64, lambda in -3.0..3.0f64, r in -0.95..0.95f64) {
        let s = schwarzian_r(x * PI, lambda, Complex64::new(r, 0.0)).unwrap();
        prop_assert!(s.im.abs() <= 1e-12 * s.norm().max(1.0));
    }

    #[test]
    fn curvature_coefficients_are_negative(x in 0.03..0.47f64) {
        let tab = SppsTableau::build(x * PI, 30, 15).unwrap();
        let a = tab.kappa_series().coeffs();
        prop_assert!(a[0].abs() <= 1e-12);
        prop_assert!(a[1..].iter().all(|&c| c < 0.0));
    }
}

/// At `λ∞` the image is the rectangle of the canonical map, so `w₁` and
/// `w₂` are elliptic integrals and the edges are straight. `M = 120` because
/// the integrand is sharply peaked near `z = 1` for small `t`.
#[test]
fn canonical_geometry() {
    for x in [0.1, 0.25, 0.35] {
        let t = x * PI;
        let c = (2.0 * t).cos();
        let k1 = adaptive_quad(
            |z| (z.powi(4) - 2.0 * c * z * z + 1.0).powf(-0.5),
            0.0,
            1.0,
            1e-14,
        )
        .unwrap();
        let k2 = adaptive_quad(
            |y| (y.powi(4) + 2.0 * c * y * y + 1.0).powf(-0.5),
            0.0,
            1.0,
            1e-14,
        )
        .unwrap();
        let pair = TableauPair::build(t, 120, 30).unwrap();
        let g = pair.geometry(lambda_infinity(t).unwrap()).unwrap();
        assert!((g.w1 - k1).abs() < 1e-9, "t={x}pi: {} vs {k1}", g.w1);
        assert!(
            (g.p2 - k2 / k1).abs() < 1e-9,
            "t={x}pi: {} vs {}",
            g.p2,
            k2 / k1
        );
        assert!(g.kappa1.abs() < 1e-12 && g.kappa2.abs() < 1e-12);
    }
}
