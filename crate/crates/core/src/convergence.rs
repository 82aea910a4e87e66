//! Minimal `(M, N)` reproducing `κ` to a given number of significant
//! figures against a high-resolution reference.

use serde::{Deserialize, Serialize};

use crate::error::{Result, ScqError};
use crate::exec::Execution;
use crate::scq::SppsTableau;
use crate::series::PowerSeries;

pub const REFERENCE_M: usize = 200;
pub const REFERENCE_N: usize = 40;
pub const M_START: usize = 10;
pub const M_STEP: usize = 5;
pub const N_START: usize = 5;
pub const N_STEP: usize = 2;

/// `x` rounded to `digits` significant figures, in scientific notation.
pub fn round_significant(x: f64, digits: usize) -> String {
    format!("{:.*e}", digits.max(1) - 1, x)
}

/// Whether `a` and `b` agree once both are rounded to `digits`
/// significant figures.
pub fn digits_agree(a: f64, b: f64, digits: usize) -> bool {
    round_significant(a, digits) == round_significant(b, digits)
}

/// `κ(λ∞ + offset)` from the first `n + 1` series terms at resolution `m`.
pub fn kappa_at(t: f64, offset: f64, m: usize, n: usize) -> Result<f64> {
    let tab = SppsTableau::build(t, m, n)?;
    Ok(tab.kappa_series().eval(tab.lambda_inf() + offset))
}

/// Partial sums `κ_N(λ)` for `N = 0..=tab.order()`.
fn partial_sums(tab: &SppsTableau, lambda: f64) -> Vec<f64> {
    let coeffs = tab.kappa_series().coeffs();
    (0..coeffs.len())
        .map(|n| PowerSeries::new(tab.lambda_inf(), coeffs[..=n].to_vec()).eval(lambda))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Resolution {
    pub t: f64,
    pub offset: f64,
    pub digits: usize,
    pub m: usize,
    pub n: usize,
    pub kappa: f64,
    pub reference: f64,
}

/// Smallest `M ∈ {10, 15, …, 200}` and, for it, smallest
/// `N ∈ {5, 7, …, 39}` agreeing with the `M = 200, N = 40` value of
/// `κ(λ∞ + offset)` in the leading `digits` figures. Resolutions are
/// evaluated through `exec`; the answer does not depend on it.
pub fn required_resolution(
    t: f64,
    offset: f64,
    digits: usize,
    exec: Execution,
) -> Result<Resolution> {
    if !(1..=16).contains(&digits) || !offset.is_finite() {
        return Err(ScqError::InvalidArgument(format!(
            "digits = {digits}, offset = {offset}"
        )));
    }
    let reference = kappa_at(t, offset, REFERENCE_M, REFERENCE_N)?;
    let ms: Vec<usize> = (M_START..=REFERENCE_M).step_by(M_STEP).collect();
    let rows = exec.map(&ms, |&m| -> Result<Option<(usize, f64)>> {
        let tab = SppsTableau::build(t, m, REFERENCE_N)?;
        let sums = partial_sums(&tab, tab.lambda_inf() + offset);
        Ok((N_START..REFERENCE_N)
            .step_by(N_STEP)
            .find(|&n| digits_agree(sums[n], reference, digits))
            .map(|n| (n, sums[n])))
    });
    for (m, row) in ms.iter().zip(rows) {
        if let Some((n, kappa)) = row? {
            return Ok(Resolution {
                t,
                offset,
                digits,
                m: *m,
                n,
                kappa,
                reference,
            });
        }
    }
    Err(ScqError::ResolutionNotReached {
        digits,
        m: REFERENCE_M,
        n: REFERENCE_N,
    })
}
