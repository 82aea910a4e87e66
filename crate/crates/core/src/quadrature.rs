//! Uniform grids on `[0, 1]` and cumulative composite Newton–Cotes
//! integration on panels of five intervals.
//!
//! Inside each six-node panel the partial integral up to every node is the
//! exact integral of the degree-5 interpolant through the panel's samples.

use crate::error::{Result, ScqError};

/// Cumulative weights in units of `h / 1440`: row `j` integrates the panel
/// interpolant from the panel's first node to node `j + 1`. Obtained by
/// integrating the Lagrange basis on nodes `0..=5` over `[0, j + 1]`.
const PANEL_WEIGHTS: [[f64; 6]; 5] = [
    [475.0, 1427.0, -798.0, 482.0, -173.0, 27.0],
    [448.0, 2064.0, 224.0, 224.0, -96.0, 16.0],
    [459.0, 1971.0, 1026.0, 1026.0, -189.0, 27.0],
    [448.0, 2048.0, 768.0, 2048.0, 448.0, 0.0],
    [475.0, 1875.0, 1250.0, 1250.0, 1875.0, 475.0],
];
const PANEL_DENOMINATOR: f64 = 1440.0;

/// Uniform grid `z_j = j / M`, `j = 0..=M`, with `M` a positive multiple of 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Grid {
    m: usize,
}

impl Grid {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 || !m.is_multiple_of(5) {
            return Err(ScqError::InvalidResolution(m));
        }
        Ok(Self { m })
    }

    /// Number of subintervals.
    pub fn intervals(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.m + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        1.0 / self.m as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        j as f64 / self.m as f64
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.m + 1).map(move |j| self.node(j))
    }
}

/// Samples of a real function at every node of a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(ScqError::SampleCount {
                expected: grid.len(),
                actual: values.len(),
            });
        }
        if let Some(j) = values.iter().position(|v| !v.is_finite()) {
            return Err(ScqError::NonFinite(j));
        }
        Ok(Self { grid, values })
    }

    /// Samples `f` at the grid nodes. Non-finite samples are rejected.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(grid, grid.nodes().map(f).collect())
    }

    pub fn constant(grid: Grid, value: f64) -> Self {
        Self {
            grid,
            values: vec![value; grid.len()],
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn first(&self) -> f64 {
        self.values[0]
    }

    pub fn last(&self) -> f64 {
        self.values[self.grid.m]
    }

    pub fn sup_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }

    /// Pointwise product.
    pub fn mul(&self, other: &GridFunction) -> Result<GridFunction> {
        self.check_same_grid(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Ok(Self {
            grid: self.grid,
            values,
        })
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<GridFunction> {
        Self::new(self.grid, self.values.iter().map(|&v| f(v)).collect())
    }

    fn check_same_grid(&self, other: &GridFunction) -> Result<()> {
        if self.grid != other.grid {
            return Err(ScqError::GridMismatch {
                left: self.grid.m,
                right: other.grid.m,
            });
        }
        Ok(())
    }
}

/// How panel contributions are accumulated across panels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Summation {
    #[default]
    Plain,
    /// Kahan-compensated running sum of the panel totals.
    Compensated,
}

pub fn cumulative_integral(g: &GridFunction) -> GridFunction {
    cumulative_integral_with(g, Summation::Plain)
}

/// Returns `F` with `F(z_0) = 0` and `F(z_j) ≈ ∫_0^{z_j} g`.
pub fn cumulative_integral_with(g: &GridFunction, summation: Summation) -> GridFunction {
    let grid = g.grid;
    let h = grid.spacing() / PANEL_DENOMINATOR;
    let mut out = vec![0.0; grid.len()];
    let mut base = 0.0;
    let mut carry = 0.0;
    for (p, panel) in g.values.windows(6).step_by(5).enumerate() {
        let start = 5 * p;
        for (j, row) in PANEL_WEIGHTS.iter().enumerate() {
            let partial: f64 = row.iter().zip(panel).map(|(w, v)| w * v).sum::<f64>() * h;
            out[start + j + 1] = base + partial;
        }
        let total = out[start + 5] - base;
        match summation {
            Summation::Plain => base = out[start + 5],
            Summation::Compensated => {
                let y = total - carry;
                let t = base + y;
                carry = (t - base) - y;
                base = t;
                out[start + 5] = base;
            }
        }
    }
    GridFunction { grid, values: out }
}

/// Iterated integrals `I_0 ≡ 1`, `I_n = ∫_0^z I_{n-1} q_{n-1}` with the
/// generating pair index taken mod 2. Returns `count` functions.
pub fn iterated_integrals(
    q0: &GridFunction,
    q1: &GridFunction,
    count: usize,
) -> Result<Vec<GridFunction>> {
    q0.check_same_grid(q1)?;
    if count == 0 {
        return Err(ScqError::InvalidArgument(
            "iterated integral count must be at least 1".into(),
        ));
    }
    let mut out = Vec::with_capacity(count);
    out.push(GridFunction::constant(q0.grid, 1.0));
    for n in 1..count {
        let q = if (n - 1) % 2 == 0 { q0 } else { q1 };
        let integrand = out[n - 1].mul(q)?;
        out.push(cumulative_integral(&integrand));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(m: usize, f: impl Fn(f64) -> f64) -> GridFunction {
        GridFunction::from_fn(Grid::new(m).unwrap(), f).unwrap()
    }

    #[test]
    fn grid_construction() {
        let g = Grid::new(5).unwrap();
        let nodes: Vec<f64> = g.nodes().collect();
        assert_eq!(nodes, vec![0.0, 0.2, 0.4, 0.6, 0.8, 1.0]);
        let g = Grid::new(60).unwrap();
        assert_eq!(g.len(), 61);
        assert_eq!(g.spacing(), 1.0 / 60.0);
        assert_eq!(Grid::new(7), Err(ScqError::InvalidResolution(7)));
        assert_eq!(Grid::new(0), Err(ScqError::InvalidResolution(0)));
    }

    #[test]
    fn weight_rows_integrate_constants() {
        for (j, row) in PANEL_WEIGHTS.iter().enumerate() {
            let s: f64 = row.iter().sum();
            assert_eq!(s, PANEL_DENOMINATOR * (j + 1) as f64);
        }
    }

    #[test]
    fn constant_integrand_is_exact() {
        let g = sample(60, |_| 1.0);
        let f = cumulative_integral(&g);
        for (j, z) in g.grid().nodes().enumerate() {
            assert!((f.values()[j] - z).abs() < 1e-15, "node {j}");
        }
    }

    #[test]
    fn quintic_is_exact() {
        let f = cumulative_integral(&sample(5, |z| z.powi(5)));
        assert!((f.last() - 1.0 / 6.0).abs() < 1e-15);
        let f = cumulative_integral(&sample(1000, |z| z.powi(5)));
        assert!((f.last() - 1.0 / 6.0).abs() < 1e-13);
    }

    #[test]
    fn sextic_is_not_exact() {
        let f = cumulative_integral(&sample(5, |z| z.powi(6)));
        assert!((f.last() - 1.0 / 7.0).abs() > 1e-6);
    }

    #[test]
    fn compensated_matches_plain_closely() {
        let g = sample(1000, |z| (3.0 * z).cos());
        let a = cumulative_integral_with(&g, Summation::Plain);
        let b = cumulative_integral_with(&g, Summation::Compensated);
        assert!((a.last() - b.last()).abs() < 1e-14);
        assert!((b.last() - (3.0_f64).sin() / 3.0).abs() < 1e-14);
    }

    #[test]
    fn iterated_integrals_of_ones_are_monomials() {
        let one = sample(50, |_| 1.0);
        let ii = iterated_integrals(&one, &one, 8).unwrap();
        let mut fact = 1.0;
        for (n, i_n) in ii.iter().enumerate() {
            if n > 0 {
                fact *= n as f64;
            }
            for (j, z) in one.grid().nodes().enumerate() {
                let exact = z.powi(n as i32) / fact;
                assert!((i_n.values()[j] - exact).abs() < 1e-12, "n={n} z={z}");
            }
        }
    }

    #[test]
    fn zero_factor_annihilates() {
        let two = sample(10, |_| 2.0);
        let zero = sample(10, |_| 0.0);
        let ii = iterated_integrals(&two, &zero, 5).unwrap();
        assert!((ii[1].last() - 2.0).abs() < 1e-15);
        for i_n in &ii[2..] {
            assert!(i_n.values().iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn iterated_integrals_reject_mismatched_grids() {
        let a = sample(10, |_| 1.0);
        let b = sample(20, |_| 1.0);
        assert_eq!(
            iterated_integrals(&a, &b, 3).unwrap_err(),
            ScqError::GridMismatch {
                left: 10,
                right: 20
            }
        );
        assert!(iterated_integrals(&a, &a, 0).is_err());
    }

    #[test]
    fn non_finite_samples_are_rejected() {
        let grid = Grid::new(5).unwrap();
        assert_eq!(
            GridFunction::from_fn(grid, |z| 1.0 / (z - 0.4)).unwrap_err(),
            ScqError::NonFinite(2)
        );
        assert!(GridFunction::new(grid, vec![0.0; 5]).is_err());
    }

    #[test]
    fn spike_at_fourth_node_makes_first_partial_negative() {
        // The degree-5 rule has negative interior weights, so monotonicity
        // only holds for integrands the panel actually resolves.
        let grid = Grid::new(5).unwrap();
        let g = GridFunction::new(grid, vec![0.0, 0.0, 0.0, 0.0, 1.0, 0.0]).unwrap();
        let f = cumulative_integral(&g);
        assert!(f.values()[1] < 0.0);
    }
}
