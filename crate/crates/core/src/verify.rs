//! Invariant suites run by the `verify` command. Each check yields an
//! [`OracleReport`] named after the invariant it tests.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Result, ScqError};
use crate::exec::Execution;
use crate::mapper::{boundary_polyline_with, map_point, vertex_angles};
use crate::oracle::{
    adaptive_quad, fit_circle, ivp_solve, schwarzian_direct, schwarzian_fd_extrapolated,
    CaseRecord, OracleReport,
};
use crate::quadrature::{cumulative_integral, Grid, GridFunction};
use crate::scq::{
    evaluate_kappa, lambda_infinity, psi0_real, psi1_real, schwarzian_r, y_infinity_on_grid,
    SppsTableau,
};
use crate::solvers::{solve_one_with, univalence_bounds_with, SolverConfig, TableauPair};

pub const SUITES: [&str; 8] = [
    "quadrature",
    "canonical",
    "series",
    "ivp",
    "univalence",
    "solvers",
    "schwarzian",
    "rendering",
];

/// `t/π` values used across the suites.
const T_FRACTIONS: [f64; 9] = [0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45];

fn case(label: impl Into<String>, error: f64) -> CaseRecord {
    CaseRecord {
        case: label.into(),
        error,
    }
}

fn report_or_failure(name: &str, tol: f64, cases: Result<Vec<CaseRecord>>) -> OracleReport {
    match cases {
        Ok(c) => OracleReport::from_cases(name, tol, c),
        Err(e) => OracleReport::failure(name, tol, e.to_string()),
    }
}

/// Runs every suite, or only `suite`.
pub fn run(suite: Option<&str>, cfg: &SolverConfig) -> Result<Vec<OracleReport>> {
    let selected: Vec<&str> = match suite {
        None => SUITES.to_vec(),
        Some(s) if SUITES.contains(&s) => vec![s],
        Some(s) => {
            return Err(ScqError::InvalidArgument(format!(
                "unknown suite {s:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    let per_suite = cfg.execution.map(&selected, |&s| run_suite(s, cfg));
    Ok(per_suite.into_iter().flatten().collect())
}

fn run_suite(name: &str, cfg: &SolverConfig) -> Vec<OracleReport> {
    match name {
        "quadrature" => quadrature_suite(),
        "canonical" => vec![canonical_suite(120)],
        "series" => T_FRACTIONS
            .iter()
            .filter_map(|&x| SppsTableau::build(x * PI, cfg.m, cfg.n).ok())
            .fold(Vec::new(), |mut acc: Vec<OracleReport>, tab| {
                merge(&mut acc, check_tableau(&tab));
                acc
            }),
        "ivp" => vec![ivp_suite(cfg)],
        "univalence" => univalence_suite(cfg),
        "solvers" => solvers_suite(cfg),
        "schwarzian" => schwarzian_suite(),
        "rendering" => rendering_suite(cfg.execution),
        _ => unreachable!("suite names are validated"),
    }
}

/// Folds per-`t` reports of the same name into one.
fn merge(acc: &mut Vec<OracleReport>, new: Vec<OracleReport>) {
    for r in new {
        match acc.iter_mut().find(|a| a.name == r.name) {
            Some(a) => {
                let mut details = std::mem::take(&mut a.details);
                details.extend(r.details);
                *a = OracleReport::from_cases(a.name.clone(), a.tolerance, details);
            }
            None => acc.push(r),
        }
    }
}

fn quadrature_suite() -> Vec<OracleReport> {
    let exactness = (|| -> Result<Vec<CaseRecord>> {
        let mut cases = Vec::new();
        for m in [5, 60, 1000] {
            let grid = Grid::new(m)?;
            for k in 0..=5 {
                let g = GridFunction::from_fn(grid, |z| z.powi(k))?;
                let f = cumulative_integral(&g);
                let err = grid
                    .nodes()
                    .zip(f.values())
                    .map(|(z, v)| (v - z.powi(k + 1) / (k + 1) as f64).abs())
                    .fold(0.0, f64::max);
                cases.push(case(format!("M={m} z^{k}"), err));
            }
        }
        Ok(cases)
    })();
    let elliptic = (|| -> Result<Vec<CaseRecord>> {
        let integrand = |z: f64| 1.0 / (1.0 + z.powi(4)).sqrt();
        let reference = adaptive_quad(integrand, 0.0, 1.0, 1e-14)?;
        let g = GridFunction::from_fn(Grid::new(60)?, integrand)?;
        Ok(vec![case(
            "M=60",
            (cumulative_integral(&g).last() - reference).abs(),
        )])
    })();
    vec![
        report_or_failure("quadrature-polynomial-exactness", 1e-13, exactness),
        report_or_failure("quadrature-vs-adaptive", 1e-9, elliptic),
    ]
}

/// Largest residual of `y∞'' + ψ₀ y∞ - λ∞ ψ₁ y∞` over nodes where a
/// centred 7-point second difference fits.
pub fn canonical_residual(t: f64, m: usize) -> Result<f64> {
    let grid = Grid::new(m)?;
    if m < 6 {
        return Err(ScqError::InvalidResolution(m));
    }
    let y = y_infinity_on_grid(t, grid)?;
    let li = lambda_infinity(t)?;
    let v = y.values();
    let h = grid.spacing();
    const W: [f64; 7] = [2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0];
    let mut worst: f64 = 0.0;
    for j in 3..=m - 3 {
        let d2 = (0..7).map(|k| W[k] * v[j + k - 3]).sum::<f64>() / (180.0 * h * h);
        let z = grid.node(j);
        let r = d2 + psi0_real(t, z) * v[j] - li * psi1_real(t, z) * v[j];
        worst = worst.max(r.abs());
    }
    Ok(worst)
}

fn canonical_suite(m: usize) -> OracleReport {
    let cases = T_FRACTIONS
        .iter()
        .map(|&x| canonical_residual(x * PI, m).map(|r| case(format!("t={x}pi"), r)))
        .collect();
    report_or_failure("canonical-ode-residual", 1e-6, cases)
}

/// Tableau invariants; each report is named after the invariant.
pub fn check_tableau(tab: &SppsTableau) -> Vec<OracleReport> {
    let t = tab.t();
    let label = format!("t={t}");
    let xt = tab.xt_end();
    let x = tab.x_end();

    let normalization = (xt[0] - 1.0).abs().max((x[0] - 1.0).abs());
    let negative = xt
        .iter()
        .chain(x)
        .map(|&v| if v < 0.0 { -v } else { 0.0 })
        .fold(0.0, f64::max);

    let grid = tab.grid();
    let bound = (|| -> Result<f64> {
        let y = y_infinity_on_grid(t, grid)?;
        let k = grid
            .nodes()
            .zip(y.values())
            .map(|(z, &yv)| (psi1_real(t, z) * yv * yv).max(1.0 / (yv * yv)))
            .fold(0.0, f64::max);
        let mut excess: f64 = 0.0;
        let mut factorial = 1.0;
        let mut power = 1.0;
        for (n, (&a, &b)) in xt.iter().zip(x).enumerate() {
            if n > 0 {
                factorial *= n as f64;
                power *= k;
            }
            let limit = power / factorial * (1.0 + 1e-12);
            excess = excess.max((a - limit).max(0.0)).max((b - limit).max(0.0));
        }
        Ok(excess)
    })();

    let a = tab.kappa_series().coeffs();
    // a₀ = 0 and aₙ < 0 otherwise; a wrong sign is an unbounded error
    let sign = if a[1..].iter().all(|&c| c < 0.0) {
        a[0].abs()
    } else {
        f64::INFINITY
    };

    let b = tab.boundary_series();
    let consistency: f64 = [-0.6, -0.3, 0.0, 0.25, 0.5]
        .iter()
        .map(|&d| {
            let l = tab.lambda_inf() + d;
            let k = evaluate_kappa(tab, l);
            (k - b.kappa_from_boundary(l)).abs() / k.abs().max(1.0)
        })
        .fold(0.0, f64::max);

    let ivp = (|| -> Result<f64> {
        let l = tab.lambda_inf() - 0.5;
        let (y, yp) = ivp_solve(t, l, 1e-13)?;
        Ok((y - b.y1.eval(l))
            .abs()
            .max((yp - b.y1_prime.eval(l)).abs()))
    })();

    vec![
        OracleReport::from_cases(
            "tableau-normalization",
            1e-15,
            vec![case(&label, normalization)],
        ),
        OracleReport::from_cases("tableau-nonnegative", 0.0, vec![case(&label, negative)]),
        report_or_failure(
            "tableau-factorial-bound",
            0.0,
            bound.map(|e| vec![case(&label, e)]),
        ),
        OracleReport::from_cases("curvature-sign-structure", 1e-12, vec![case(&label, sign)]),
        OracleReport::from_cases(
            "kappa-boundary-consistency",
            1e-12,
            vec![case(&label, consistency)],
        ),
        report_or_failure("tableau-vs-ivp", 1e-7, ivp.map(|e| vec![case(&label, e)])),
    ]
}

fn ivp_suite(cfg: &SolverConfig) -> OracleReport {
    let cases = (|| -> Result<Vec<CaseRecord>> {
        let mut out = Vec::new();
        for &x in &[0.1, 0.25, 0.4] {
            let pair = TableauPair::from_config(x * PI, cfg)?;
            let bounds = univalence_bounds_with(&pair, cfg)?;
            let b = pair.tab.boundary_series();
            for s in [0.2, 0.5, 0.8] {
                let l = bounds.lambda_min + s * (bounds.lambda_max - bounds.lambda_min);
                let (y, yp) = ivp_solve(x * PI, l, 1e-13)?;
                let err = (y - b.y1.eval(l))
                    .abs()
                    .max((yp - b.y1_prime.eval(l)).abs());
                out.push(case(format!("t={x}pi lambda={l:.6}"), err));
            }
        }
        Ok(out)
    })();
    report_or_failure("spps-vs-ivp", 1e-7, cases)
}

fn univalence_suite(cfg: &SolverConfig) -> Vec<OracleReport> {
    let mut anti = Vec::new();
    let mut zero = Vec::new();
    let mut order = Vec::new();
    for &x in &T_FRACTIONS {
        let t = x * PI;
        let label = format!("t={x}pi");
        let both = TableauPair::from_config(t, cfg).and_then(|p| {
            let b = univalence_bounds_with(&p, cfg)?;
            let partner =
                univalence_bounds_with(&TableauPair::from_config(FRAC_PI_2 - t, cfg)?, cfg)?;
            Ok((p, b, partner))
        });
        match both {
            Ok((p, b, partner)) => {
                anti.push(case(&label, (partner.lambda_min + b.lambda_max).abs()));
                zero.push(case(&label, p.tab.kappa_series().eval(b.lambda_min).abs()));
                let ordered = b.lambda_min < b.lambda_inf && b.lambda_inf < b.lambda_max;
                order.push(case(&label, if ordered { 0.0 } else { 1.0 }));
            }
            Err(e) => {
                for v in [&mut anti, &mut zero, &mut order] {
                    v.push(case(format!("{label}: {e}"), f64::INFINITY));
                }
            }
        }
    }
    vec![
        OracleReport::from_cases("univalence-antisymmetry", 1e-8, anti),
        OracleReport::from_cases("univalence-kappa-zero", 1e-8, zero),
        OracleReport::from_cases("univalence-ordering", 0.0, order),
    ]
}

fn solvers_suite(cfg: &SolverConfig) -> Vec<OracleReport> {
    let anchors = (|| -> Result<Vec<CaseRecord>> {
        let pair = TableauPair::from_config(FRAC_PI_4, cfg)?;
        let roots = solve_one_with(&pair, 0.8, cfg)?;
        let want = [-0.32219, -0.91570];
        if roots.len() != 2 {
            return Err(ScqError::NoRoot(format!(
                "expected two roots, got {roots:?}"
            )));
        }
        Ok(roots
            .iter()
            .zip(want)
            .map(|(r, w)| case(format!("kappa=0.8 root {w}"), (r - w).abs()))
            .collect())
    })();
    let round_trip = (|| -> Result<Vec<CaseRecord>> {
        let mut out = Vec::new();
        for &x in &[0.15, 0.3, 0.42] {
            let pair = TableauPair::from_config(x * PI, cfg)?;
            let b = univalence_bounds_with(&pair, cfg)?;
            for s in [0.1, 0.45, 0.9] {
                let l = b.lambda_min + s * (b.lambda_max - b.lambda_min);
                let k = evaluate_kappa(&pair.tab, l);
                let roots = solve_one_with(&pair, k, cfg)?;
                let err = roots
                    .iter()
                    .map(|r| (r - l).abs())
                    .fold(f64::INFINITY, f64::min);
                out.push(case(format!("t={x}pi lambda={l:.6}"), err));
            }
        }
        Ok(out)
    })();
    vec![
        report_or_failure("solve-one-anchor", 1e-4, anchors),
        report_or_failure("solve-one-round-trip", 1e-8, round_trip),
    ]
}

/// Interior sample points `0.1 ≤ |z| ≤ 0.575`.
pub fn interior_points(count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|k| Complex64::from_polar(0.1 + 0.025 * k as f64, 0.37 * k as f64 + 0.1))
        .collect()
}

/// Largest relative deviation of the finite-difference Schwarzian of the
/// integrated map from `R_{t,λ}` at `points`.
pub fn schwarzian_deviation(
    t: f64,
    lambda: f64,
    points: &[Complex64],
    steps: usize,
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &z in points {
        let fd =
            schwarzian_fd_extrapolated(|w| map_point(t, lambda, w, steps).map(|p| p.0), z, 8e-3)?;
        let exact = schwarzian_r(t, lambda, z)?;
        worst = worst.max((fd - exact).norm() / exact.norm());
    }
    Ok(worst)
}

fn schwarzian_suite() -> Vec<OracleReport> {
    let pairs = [(0.25, -0.32219), (0.3, 0.5), (0.15, 0.2)];
    let fd = pairs
        .iter()
        .map(|&(x, l)| {
            schwarzian_deviation(x * PI, l, &interior_points(20), 400)
                .map(|e| case(format!("t={x}pi lambda={l}"), e))
        })
        .collect();

    let mut sym = Vec::new();
    let mut direct = Vec::new();
    for (k, z) in interior_points(20).into_iter().enumerate() {
        let t = (0.05 + 0.02 * k as f64) * PI;
        let l = -1.0 + 0.1 * k as f64;
        let iz = Complex64::i() * z;
        let err = schwarzian_r(FRAC_PI_2 - t, -l, iz)
            .and_then(|a| Ok((a + schwarzian_r(t, l, z)?).norm() / a.norm()));
        sym.push(err.map(|e| case(format!("z={z}"), e)));
        let err = schwarzian_r(t, l, z).map(|r| (r - schwarzian_direct(t, l, z)).norm() / r.norm());
        direct.push(err.map(|e| case(format!("z={z}"), e)));
    }
    vec![
        report_or_failure("schwarzian-finite-difference", 1e-5, fd),
        report_or_failure("schwarzian-quarter-turn", 1e-12, sym.into_iter().collect()),
        report_or_failure("schwarzian-pole-form", 1e-12, direct.into_iter().collect()),
    ]
}

fn rendering_suite(exec: Execution) -> Vec<OracleReport> {
    let (t, lambda) = (0.3 * PI, 0.2);
    let scene = match boundary_polyline_with(t, lambda, 64, 400, false, exec) {
        Ok(s) => s,
        Err(e) => {
            return vec![OracleReport::failure("rendering", 0.0, e.to_string())];
        }
    };
    let fits: Result<Vec<_>> = scene.boundary.iter().map(|e| fit_circle(e)).collect();
    let fits = match fits {
        Ok(f) => f,
        Err(e) => {
            return vec![OracleReport::failure(
                "rendering-circle-fit",
                1e-4,
                e.to_string(),
            )]
        }
    };
    let circle = scene
        .boundary
        .iter()
        .zip(&fits)
        .enumerate()
        .map(|(k, (e, f))| {
            let diameter = e
                .iter()
                .flat_map(|p| e.iter().map(move |q| (p - q).norm()))
                .fold(0.0, f64::max);
            case(format!("edge {k}"), f.max_residual / diameter)
        })
        .collect();
    let angles = vertex_angles(&scene, &fits)
        .into_iter()
        .enumerate()
        .map(|(k, a)| case(format!("vertex {k}"), (a - 90.0).abs()))
        .collect();
    let right = &scene.boundary[0];
    let kappa = TableauPair::build(t, 120, 40).map(|p| evaluate_kappa(&p.tab, lambda));
    let curvature = kappa.map(|k| {
        let fitted = fits[0].signed_curvature(right[right.len() / 2], Complex64::new(0.0, 0.0));
        vec![case("right edge", (fitted - k).abs())]
    });
    vec![
        OracleReport::from_cases("rendering-circle-fit", 1e-4, circle),
        OracleReport::from_cases("rendering-right-angles", 0.5, angles),
        report_or_failure("rendering-curvature", 1e-3, curvature),
    ]
}
