//! Precision-controlled CDF evaluation by segmenting the series matrix.
//!
//! Both methods keep a leading block of lines (rows for [`Method::Div1`],
//! columns for [`Method::Div2`]) and drop the rest once the remaining Poisson
//! mass of the outer index falls below `eps_tail`. Each kept line is
//! truncated at the first length whose inner Poisson tail, scaled by the
//! line's own weight, falls below `eps_line`. Since every incomplete beta
//! value is at most one, the omitted mass is bounded by
//!
//! ```text
//! U = tail(δ_outer, boundary) + Σ_k w_outer(k) · tail(δ_inner, n_k)
//!   = 1 − Σ_k w_outer(k) · head(δ_inner, n_k)
//!   < boundary · eps_line + eps_tail
//! ```
//!
//! and the reported estimate never exceeds the true CDF.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::series::{BetaLine, DistParams, IncBetaStrategy, PoissonTerms};

pub use crate::series::Axis;

pub const DEFAULT_EPS_LINE: f64 = 1e-7;
pub const DEFAULT_EPS_TAIL: f64 = 1e-5;

/// Truncation budgets.
///
/// `eps_line` bounds the omitted mass of each kept line, `eps_tail` bounds
/// the mass of all dropped lines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorControls {
    pub eps_line: f64,
    pub eps_tail: f64,
}

impl ErrorControls {
    pub fn new(eps_line: f64, eps_tail: f64) -> Result<Self> {
        let controls = ErrorControls { eps_line, eps_tail };
        controls.validate()?;
        Ok(controls)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps_line > 0.0) {
            return Err(Error::Domain("eps_line must be > 0"));
        }
        if !(self.eps_line <= self.eps_tail) {
            return Err(Error::Domain("eps_line must not exceed eps_tail"));
        }
        if !(self.eps_tail <= 0.1) {
            return Err(Error::Domain("eps_tail must be <= 0.1"));
        }
        Ok(())
    }
}

impl Default for ErrorControls {
    fn default() -> Self {
        ErrorControls { eps_line: DEFAULT_EPS_LINE, eps_tail: DEFAULT_EPS_TAIL }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Row-major segmentation.
    Div1,
    /// Column-major segmentation.
    Div2,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Div1 => "DIV1",
            Method::Div2 => "DIV2",
        }
    }

    fn axis(self) -> Axis {
        match self {
            Method::Div1 => Axis::Row,
            Method::Div2 => Axis::Column,
        }
    }
}

/// Bookkeeping for one kept row or column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineDiagnostic {
    /// Row index `j` or column index `l`.
    pub index: usize,
    /// Number of items summed along the line.
    pub trunc_count: usize,
    pub partial_sum: f64,
    /// Poisson bound on the items left out of this line.
    pub residual_bound: f64,
}

/// Result of a precision-controlled CDF evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfReport {
    pub p_hat: f64,
    /// Computable bound on `CDF − p_hat`.
    pub upper_bound: f64,
    /// A-priori budget `boundary · eps_line + eps_tail`.
    pub control_line: f64,
    /// First dropped line index.
    pub boundary: usize,
    pub item_count: usize,
    pub lines: Vec<LineDiagnostic>,
    pub method: Method,
}

impl CdfReport {
    fn exact(value: f64, method: Method) -> Self {
        CdfReport {
            p_hat: value,
            upper_bound: 0.0,
            control_line: 0.0,
            boundary: 0,
            item_count: 0,
            lines: Vec::new(),
            method,
        }
    }
}

/// Smallest `k ≥ 1` with `poisson_tail(delta, k) < eps_tail`.
pub fn find_boundary(delta: f64, eps_tail: f64) -> Result<usize> {
    if !(eps_tail > 0.0) {
        return Err(Error::Domain("eps_tail must be > 0"));
    }
    Ok(boundary_in(&PoissonTerms::new(delta)?, eps_tail))
}

fn boundary_in(terms: &PoissonTerms, eps: f64) -> usize {
    let mut k = 1;
    while !(terms.tail(k) < eps) {
        k += 1;
    }
    k
}

/// Adaptive sum of one row (`axis = Row`, `fixed_index = j`) or column
/// (`axis = Column`, `fixed_index = l`).
pub fn line_sum_adaptive(
    params: &DistParams,
    fixed_index: usize,
    axis: Axis,
    eps_line: f64,
) -> Result<LineDiagnostic> {
    line_sum_adaptive_with(params, fixed_index, axis, eps_line, IncBetaStrategy::Direct)
}

pub fn line_sum_adaptive_with(
    params: &DistParams,
    fixed_index: usize,
    axis: Axis,
    eps_line: f64,
    strategy: IncBetaStrategy,
) -> Result<LineDiagnostic> {
    params.validate_unit_x()?;
    if !(eps_line > 0.0) {
        return Err(Error::Domain("eps_line must be > 0"));
    }
    let (fixed, walk) = poisson_pair(params, axis)?;
    adaptive_line(params, &fixed, &walk, fixed_index, axis, eps_line, strategy)
}

/// Poisson tables for (fixed index, walked index) of a line on `axis`.
fn poisson_pair(params: &DistParams, axis: Axis) -> Result<(PoissonTerms, PoissonTerms)> {
    let rows = PoissonTerms::new(params.delta1)?;
    let cols = PoissonTerms::new(params.delta2)?;
    Ok(match axis {
        Axis::Row => (rows, cols),
        Axis::Column => (cols, rows),
    })
}

fn adaptive_line(
    params: &DistParams,
    fixed: &PoissonTerms,
    walk: &PoissonTerms,
    index: usize,
    axis: Axis,
    eps_line: f64,
    strategy: IncBetaStrategy,
) -> Result<LineDiagnostic> {
    let weight = fixed.weight(index);
    let mut count = 0;
    while !(weight * walk.tail(count) < eps_line) {
        count += 1;
    }
    let (a, b) = match axis {
        Axis::Row => (params.a + index as f64, params.b),
        Axis::Column => (params.a, params.b + index as f64),
    };
    let mut betas = BetaLine::new(params.x, a, b, axis, strategy);
    let mut partial_sum = 0.0;
    for k in 0..count {
        partial_sum += weight * walk.weight(k) * betas.next_value()?;
    }
    Ok(LineDiagnostic {
        index,
        trunc_count: count,
        partial_sum,
        residual_bound: weight * walk.tail(count),
    })
}

/// Row-major evaluation.
pub fn div1_cdf(params: &DistParams, controls: &ErrorControls) -> Result<CdfReport> {
    cdf_with(params, controls, Method::Div1, IncBetaStrategy::Direct)
}

/// Column-major evaluation.
pub fn div2_cdf(params: &DistParams, controls: &ErrorControls) -> Result<CdfReport> {
    cdf_with(params, controls, Method::Div2, IncBetaStrategy::Direct)
}

pub fn cdf(params: &DistParams, controls: &ErrorControls, method: Method) -> Result<CdfReport> {
    cdf_with(params, controls, method, IncBetaStrategy::Direct)
}

/// [`cdf`] with an explicit incomplete beta strategy along each line.
pub fn cdf_with(
    params: &DistParams,
    controls: &ErrorControls,
    method: Method,
    strategy: IncBetaStrategy,
) -> Result<CdfReport> {
    params.validate()?;
    controls.validate()?;
    if params.x <= 0.0 {
        return Ok(CdfReport::exact(0.0, method));
    }
    if params.x >= 1.0 {
        return Ok(CdfReport::exact(1.0, method));
    }
    let axis = method.axis();
    let (fixed, walk) = poisson_pair(params, axis)?;
    let boundary = boundary_in(&fixed, controls.eps_tail);

    let mut lines = Vec::with_capacity(boundary);
    for index in 0..boundary {
        lines.push(adaptive_line(params, &fixed, &walk, index, axis, controls.eps_line, strategy)?);
    }
    let p_hat: f64 = lines.iter().map(|l| l.partial_sum).sum();
    let upper_bound =
        fixed.tail(boundary) + lines.iter().map(|l| l.residual_bound).sum::<f64>();
    let item_count = lines.iter().map(|l| l.trunc_count).sum();
    Ok(CdfReport {
        p_hat: p_hat.clamp(0.0, 1.0),
        upper_bound,
        control_line: boundary as f64 * controls.eps_line + controls.eps_tail,
        boundary,
        item_count,
        lines,
        method,
    })
}

/// CDF of the doubly non-central F distribution at `f`, through
/// `x = n₁f / (n₁f + n₂)`.
pub fn f_cdf(
    n1: f64,
    n2: f64,
    lambda1: f64,
    lambda2: f64,
    f: f64,
    method: Method,
    controls: &ErrorControls,
) -> Result<CdfReport> {
    let params = f_params(n1, n2, lambda1, lambda2, f)?;
    controls.validate()?;
    if f <= 0.0 {
        return Ok(CdfReport::exact(0.0, method));
    }
    cdf(&params, controls, method)
}

/// Beta-form parameters for the F distribution at `f`.
pub fn f_params(n1: f64, n2: f64, lambda1: f64, lambda2: f64, f: f64) -> Result<DistParams> {
    if f.is_nan() {
        return Err(Error::Domain("f must not be NaN"));
    }
    if !(n1 > 0.0 && n1.is_finite() && n2 > 0.0 && n2.is_finite()) {
        return Err(Error::Domain("degrees of freedom must be finite and > 0"));
    }
    let x = if f <= 0.0 {
        0.0
    } else if f == f64::INFINITY {
        1.0
    } else {
        let t = n1 * f;
        t / (t + n2)
    };
    DistParams::from_degrees_of_freedom(n1, n2, lambda1, lambda2, x)
}
