//! The doubly infinite series matrix whose entries sum to the CDF.
//!
//! Item `(j, l)` is `L_{j,l} = p(j; δ₁) · p(l; δ₂) · I_x(j + a, l + b)` where
//! `p(k; δ) = e^{−δ} δ^k / k!` is the Poisson weight. Rows are indexed by `j`,
//! columns by `l`.

use alloc::vec::Vec;

use libm::exp;

use crate::error::{Error, Result};
use crate::special::{inc_beta_step_a, inc_beta_step_b, reg_inc_beta, BetaArgs};

/// Non-centrality halves at or above this are rejected: `e^{−δ}` would leave
/// the normal double range.
pub const MAX_NONCENTRALITY: f64 = 700.0;

/// Default cap on the number of cells in a [`MatrixSlab`].
pub const DEFAULT_CELL_BUDGET: usize = 10_000_000;

/// Parameters of the doubly non-central beta distribution in shape form.
///
/// `a = n₁/2`, `b = n₂/2`, `delta1 = λ₁/2`, `delta2 = λ₂/2`. The evaluation
/// point `x` may be any non-NaN value: the CDF evaluators treat `x ≤ 0` and
/// `x ≥ 1` as exact 0 and 1, while matrix operations require `0 ≤ x ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistParams {
    pub a: f64,
    pub b: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub x: f64,
}

impl DistParams {
    pub fn new(a: f64, b: f64, delta1: f64, delta2: f64, x: f64) -> Result<Self> {
        let params = DistParams { a, b, delta1, delta2, x };
        params.validate()?;
        Ok(params)
    }

    /// Build from degrees of freedom and full non-centralities.
    pub fn from_degrees_of_freedom(
        n1: f64,
        n2: f64,
        lambda1: f64,
        lambda2: f64,
        x: f64,
    ) -> Result<Self> {
        Self::new(n1 / 2.0, n2 / 2.0, lambda1 / 2.0, lambda2 / 2.0, x)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0) || !self.a.is_finite() {
            return Err(Error::Domain("shape a must be finite and > 0"));
        }
        if !(self.b > 0.0) || !self.b.is_finite() {
            return Err(Error::Domain("shape b must be finite and > 0"));
        }
        check_delta(self.delta1)?;
        check_delta(self.delta2)?;
        if self.x.is_nan() {
            return Err(Error::Domain("x must not be NaN"));
        }
        Ok(())
    }

    pub(crate) fn validate_unit_x(&self) -> Result<()> {
        self.validate()?;
        if !(0.0..=1.0).contains(&self.x) {
            return Err(Error::Domain("x must lie in [0, 1] for matrix items"));
        }
        Ok(())
    }

    /// The same distribution seen from the other ratio `X₂/(X₁+X₂)` at `1 − x`.
    pub fn reflected(&self) -> Self {
        DistParams {
            a: self.b,
            b: self.a,
            delta1: self.delta2,
            delta2: self.delta1,
            x: 1.0 - self.x,
        }
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if delta.is_nan() || delta < 0.0 {
        return Err(Error::Domain("non-centrality must be >= 0"));
    }
    if delta >= MAX_NONCENTRALITY {
        return Err(Error::Range("unsupported non-centrality magnitude (delta must be < 700)"));
    }
    Ok(())
}

/// Direction of travel along one line of the matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Fixed row `j`, walking the column index `l`.
    Row,
    /// Fixed column `l`, walking the row index `j`.
    Column,
}

/// How incomplete beta values along a line are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IncBetaStrategy {
    /// Every value from [`reg_inc_beta`].
    #[default]
    Direct,
    /// First value from [`reg_inc_beta`], the rest by one-step shape
    /// recurrences.
    Recurrence,
}

/// Poisson weights `e^{−δ}δ^k/k!`, `k = 0..count`, by the multiplicative
/// recurrence `w_0 = e^{−δ}`, `w_k = w_{k−1}·δ/k`.
pub fn poisson_weights(delta: f64, count: usize) -> Result<Vec<f64>> {
    check_delta(delta)?;
    if count == 0 {
        return Err(Error::Domain("count must be >= 1"));
    }
    let mut weights = Vec::with_capacity(count);
    let mut w = exp(-delta);
    weights.push(w);
    for k in 1..count {
        w = w * delta / k as f64;
        weights.push(w);
    }
    Ok(weights)
}

/// `1 − e^{−δ} Σ_{j<k} δ^j/j!`, clamped to `[0, 1]`.
pub fn poisson_tail(delta: f64, k: usize) -> Result<f64> {
    Ok(PoissonTerms::new(delta)?.tail(k))
}

/// Tabulated Poisson weights and tails for one non-centrality half.
///
/// The table runs until the weights underflow past the mode; beyond it both
/// weights and tails are zero. Tails are taken as `1 − head` while the head
/// mass is below one half and as the directly summed upper tail afterwards,
/// so small tails keep full relative precision.
#[derive(Debug, Clone)]
pub struct PoissonTerms {
    delta: f64,
    weights: Vec<f64>,
    head: Vec<f64>,
    upper: Vec<f64>,
}

impl PoissonTerms {
    pub fn new(delta: f64) -> Result<Self> {
        check_delta(delta)?;
        let mut weights = Vec::new();
        let mut w = exp(-delta);
        let mut k = 0usize;
        loop {
            weights.push(w);
            k += 1;
            w = w * delta / k as f64;
            if (k as f64 > delta && w < f64::MIN_POSITIVE) || w == 0.0 {
                break;
            }
        }
        let n = weights.len();
        let mut head = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        head.push(0.0);
        for w in &weights {
            acc += w;
            head.push(acc);
        }
        let mut upper = alloc::vec![0.0; n + 1];
        for i in (0..n).rev() {
            upper[i] = upper[i + 1] + weights[i];
        }
        Ok(PoissonTerms { delta, weights, head, upper })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Number of tabulated (non-underflowing) weights.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, k: usize) -> f64 {
        self.weights.get(k).copied().unwrap_or(0.0)
    }

    /// Mass of the first `k` weights.
    pub fn head(&self, k: usize) -> f64 {
        let k = k.min(self.weights.len());
        self.head[k]
    }

    /// Poisson mass at indices `>= k`.
    pub fn tail(&self, k: usize) -> f64 {
        if k == 0 {
            return 1.0;
        }
        if k >= self.weights.len() {
            return 0.0;
        }
        let head = self.head[k];
        let t = if head < 0.5 { 1.0 - head } else { self.upper[k] };
        t.clamp(0.0, 1.0)
    }
}

/// Walks `I_x(a + i, b)` (column direction) or `I_x(a, b + i)` (row
/// direction) for `i = 0, 1, …`.
pub(crate) struct BetaLine {
    x: f64,
    a: f64,
    b: f64,
    axis: Axis,
    strategy: IncBetaStrategy,
    last: Option<f64>,
}

impl BetaLine {
    pub(crate) fn new(x: f64, a: f64, b: f64, axis: Axis, strategy: IncBetaStrategy) -> Self {
        BetaLine { x, a, b, axis, strategy, last: None }
    }

    pub(crate) fn next_value(&mut self) -> Result<f64> {
        let value = match (self.strategy, self.last) {
            (IncBetaStrategy::Recurrence, Some(prev)) => {
                let (a, b) = match self.axis {
                    Axis::Row => (self.a, self.b - 1.0),
                    Axis::Column => (self.a - 1.0, self.b),
                };
                let args = BetaArgs::new(self.x, a, b)?;
                match self.axis {
                    Axis::Row => inc_beta_step_b(args, prev)?,
                    Axis::Column => inc_beta_step_a(args, prev)?,
                }
            }
            _ => reg_inc_beta(BetaArgs::new(self.x, self.a, self.b)?)?,
        };
        self.last = Some(value);
        match self.axis {
            Axis::Row => self.b += 1.0,
            Axis::Column => self.a += 1.0,
        }
        Ok(value)
    }
}

fn poisson_weight(delta: f64, k: usize) -> f64 {
    let mut w = exp(-delta);
    for i in 1..=k {
        w = w * delta / i as f64;
    }
    w
}

/// `L_{j,l} = e^{−(δ₁+δ₂)} δ₁^j δ₂^l / (j! l!) · I_x(j + a, l + b)`.
pub fn matrix_item(params: &DistParams, j: usize, l: usize) -> Result<f64> {
    params.validate_unit_x()?;
    let w1 = poisson_weight(params.delta1, j);
    let w2 = poisson_weight(params.delta2, l);
    let beta = reg_inc_beta(BetaArgs::new(params.x, params.a + j as f64, params.b + l as f64)?)?;
    Ok(w1 * w2 * beta)
}

/// Dense row-major block of matrix items `L_{j,l}`, `j < rows`, `l < cols`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixSlab {
    pub rows: usize,
    pub cols: usize,
    pub items: Vec<f64>,
    pub params: DistParams,
}

impl MatrixSlab {
    pub fn get(&self, j: usize, l: usize) -> f64 {
        self.items[j * self.cols + l]
    }

    pub fn row(&self, j: usize) -> &[f64] {
        &self.items[j * self.cols..(j + 1) * self.cols]
    }

    /// Row sums added in ascending row order.
    pub fn total(&self) -> f64 {
        (0..self.rows).map(|j| self.row(j).iter().sum::<f64>()).sum()
    }

    /// Position and value of the largest item (first one on ties).
    pub fn argmax(&self) -> (usize, usize, f64) {
        let mut best = (0, 0, f64::NEG_INFINITY);
        for j in 0..self.rows {
            for (l, &v) in self.row(j).iter().enumerate() {
                if v > best.2 {
                    best = (j, l, v);
                }
            }
        }
        best
    }

    /// Poisson mass outside the slab, an upper bound on the sum of the
    /// omitted items.
    pub fn residual_bound(&self) -> Result<f64> {
        let p1 = PoissonTerms::new(self.params.delta1)?;
        let p2 = PoissonTerms::new(self.params.delta2)?;
        Ok(1.0 - p1.head(self.rows) * p2.head(self.cols))
    }
}

/// Options for [`matrix_slab_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlabOptions {
    pub strategy: IncBetaStrategy,
    pub cell_budget: usize,
}

impl Default for SlabOptions {
    fn default() -> Self {
        SlabOptions { strategy: IncBetaStrategy::Direct, cell_budget: DEFAULT_CELL_BUDGET }
    }
}

pub fn matrix_slab(params: &DistParams, rows: usize, cols: usize) -> Result<MatrixSlab> {
    matrix_slab_with(params, rows, cols, SlabOptions::default())
}

pub fn matrix_slab_with(
    params: &DistParams,
    rows: usize,
    cols: usize,
    options: SlabOptions,
) -> Result<MatrixSlab> {
    params.validate_unit_x()?;
    if rows == 0 || cols == 0 {
        return Err(Error::Domain("slab needs at least one row and one column"));
    }
    let cells = rows.saturating_mul(cols);
    if cells > options.cell_budget {
        return Err(Error::Resource {
            what: "matrix slab cells",
            requested: cells,
            limit: options.cell_budget,
        });
    }
    let w1 = poisson_weights(params.delta1, rows)?;
    let w2 = poisson_weights(params.delta2, cols)?;
    let mut items = Vec::with_capacity(cells);
    for (j, &wj) in w1.iter().enumerate() {
        let mut line =
            BetaLine::new(params.x, params.a + j as f64, params.b, Axis::Row, options.strategy);
        for &wl in &w2 {
            items.push(wj * wl * line.next_value()?);
        }
    }
    Ok(MatrixSlab { rows, cols, items, params: *params })
}
