/// All roots of `f` on `[lo, hi]` found by a uniform sign-change scan and
/// polished with [`polish_root`]. `f` returns the value and its derivative.
/// Endpoints are accepted as roots when `|f| <= endpoint_tol`.
pub fn scan_roots<F>(
    f: F,
    lo: f64,
    hi: f64,
    steps: usize,
    endpoint_tol: f64,
    max_iter: usize,
) -> Vec<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    let steps = steps.max(1);
    let xs: Vec<f64> = (0..=steps)
        .map(|k| {
            if k == steps {
                hi
            } else {
                lo + (hi - lo) * k as f64 / steps as f64
            }
        })
        .collect();
    let vs: Vec<f64> = xs.iter().map(|&x| f(x).0).collect();

    let mut roots = Vec::new();
    if vs[0].abs() <= endpoint_tol {
        roots.push(lo);
    }
    for k in 0..steps {
        let (a, b) = (xs[k], xs[k + 1]);
        let (fa, fb) = (vs[k], vs[k + 1]);
        if k > 0 && fa == 0.0 {
            roots.push(a);
        } else if fa * fb < 0.0 {
            roots.push(polish_root(&f, a, b, fa, max_iter));
        }
    }
    if vs[steps].abs() <= endpoint_tol {
        roots.push(hi);
    }

    roots.sort_by(f64::total_cmp);
    let scale = lo.abs().max(hi.abs()).max(1.0);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * scale);
    roots
}

/// Safeguarded Newton iteration inside a sign-change bracket `[a, b]`:
/// Newton steps are taken while they stay inside the shrinking bracket,
/// bisection otherwise.
pub fn polish_root<F>(f: &F, a: f64, b: f64, fa: f64, max_iter: usize) -> f64
where
    F: Fn(f64) -> (f64, f64),
{
    let (mut lo, mut hi) = (a, b);
    let lo_sign = fa.signum();
    let mut x = 0.5 * (lo + hi);
    for _ in 0..max_iter {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return x;
        }
        if fx.signum() == lo_sign {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - fx / dfx;
        let inside = newton.is_finite() && (newton - lo) * (newton - hi) < 0.0;
        let next = if inside { newton } else { 0.5 * (lo + hi) };
        if (next - x).abs() <= 2.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE)
            || (hi - lo).abs() <= 2.0 * f64::EPSILON * x.abs()
        {
            return next;
        }
        x = next;
    }
    x
}
