//! Direct summation of a large rectangle of the series matrix.
//!
//! The rectangle is sized so the Poisson tail left out on each axis is below
//! `tail_target`, which makes the result accurate well beyond the bounds the
//! segmented methods promise. Only [`reg_inc_beta`] is used, never the shape
//! recurrences, so oracle and method errors stay independent.

use alloc::vec::Vec;

use crate::div::{cdf, Axis, ErrorControls, Method};
use crate::error::{Error, Result};
use crate::series::{DistParams, PoissonTerms};
use crate::special::{reg_inc_beta, BetaArgs};

/// Slack allowed below zero when checking `oracle − method ≥ 0`: both sums
/// are rounded independently.
pub const ROUNDOFF_ALLOWANCE: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Poisson tail mass left uncovered on each axis.
    pub tail_target: f64,
    pub max_terms_per_axis: usize,
    /// Sum exactly this many rows and columns instead of sizing by
    /// `tail_target`.
    pub fixed_terms: Option<usize>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { tail_target: 1e-12, max_terms_per_axis: 5000, fixed_terms: None }
    }
}

impl OracleConfig {
    /// Fixed `terms × terms` rectangle; `fixed(100)` mirrors the classic
    /// "100 items per row and column" direct calculation.
    pub fn fixed(terms: usize) -> Self {
        OracleConfig { fixed_terms: Some(terms), ..OracleConfig::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tail_target > 0.0 && self.tail_target <= 1e-8) {
            return Err(Error::Domain("oracle tail_target must lie in (0, 1e-8]"));
        }
        if self.fixed_terms == Some(0) {
            return Err(Error::Domain("fixed oracle needs at least one term per axis"));
        }
        Ok(())
    }

    fn extent(&self, terms: &PoissonTerms) -> Result<usize> {
        let n = match self.fixed_terms {
            Some(n) => n,
            None => {
                let mut k = 1;
                while !(terms.tail(k) < self.tail_target) {
                    k += 1;
                }
                k
            }
        };
        if n > self.max_terms_per_axis {
            return Err(Error::Resource {
                what: "oracle terms per axis",
                requested: n,
                limit: self.max_terms_per_axis,
            });
        }
        Ok(n)
    }
}

/// Outcome of a direct summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSum {
    pub p: f64,
    pub rows: usize,
    pub cols: usize,
}

impl OracleSum {
    pub fn item_count(&self) -> usize {
        self.rows * self.cols
    }
}

pub fn direct_sum(params: &DistParams, config: &OracleConfig) -> Result<OracleSum> {
    params.validate()?;
    config.validate()?;
    if params.x <= 0.0 {
        return Ok(OracleSum { p: 0.0, rows: 0, cols: 0 });
    }
    if params.x >= 1.0 {
        return Ok(OracleSum { p: 1.0, rows: 0, cols: 0 });
    }
    let p1 = PoissonTerms::new(params.delta1)?;
    let p2 = PoissonTerms::new(params.delta2)?;
    let rows = config.extent(&p1)?;
    let cols = config.extent(&p2)?;
    let mut row_sums = Vec::with_capacity(rows);
    for j in 0..rows {
        let wj = p1.weight(j);
        let mut s = 0.0;
        for l in 0..cols {
            let wl = p2.weight(l);
            if wj * wl == 0.0 {
                continue;
            }
            s += wj * wl * beta(params, j, l)?;
        }
        row_sums.push(s);
    }
    Ok(OracleSum { p: row_sums.iter().sum(), rows, cols })
}

/// Reference CDF by direct summation.
pub fn direct_cdf(params: &DistParams, config: &OracleConfig) -> Result<f64> {
    Ok(direct_sum(params, config)?.p)
}

fn beta(params: &DistParams, j: usize, l: usize) -> Result<f64> {
    reg_inc_beta(BetaArgs::new(params.x, params.a + j as f64, params.b + l as f64)?)
}

/// Full sum of row `index` (`Axis::Row`) or column `index` (`Axis::Column`).
pub fn line_exact(
    params: &DistParams,
    index: usize,
    axis: Axis,
    config: &OracleConfig,
) -> Result<f64> {
    params.validate_unit_x()?;
    config.validate()?;
    let p1 = PoissonTerms::new(params.delta1)?;
    let p2 = PoissonTerms::new(params.delta2)?;
    let (fixed, walk) = match axis {
        Axis::Row => (&p1, &p2),
        Axis::Column => (&p2, &p1),
    };
    let n = config.extent(walk)?;
    let wf = fixed.weight(index);
    let mut s = 0.0;
    for k in 0..n {
        let wk = walk.weight(k);
        if wf * wk == 0.0 {
            continue;
        }
        let (j, l) = match axis {
            Axis::Row => (index, k),
            Axis::Column => (k, index),
        };
        s += wf * wk * beta(params, j, l)?;
    }
    Ok(s)
}

/// Method result measured against the oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub p_oracle: f64,
    pub p_method: f64,
    /// `p_oracle − p_method`.
    pub error: f64,
    pub upper_bound: f64,
    pub control_line: f64,
    /// `−ROUNDOFF_ALLOWANCE ≤ error ≤ upper_bound ≤ control_line`.
    pub bound_respected: bool,
}

impl ErrorReport {
    pub fn new(p_oracle: f64, p_method: f64, upper_bound: f64, control_line: f64) -> Self {
        let error = p_oracle - p_method;
        ErrorReport {
            p_oracle,
            p_method,
            error,
            upper_bound,
            control_line,
            bound_respected: error >= -ROUNDOFF_ALLOWANCE
                && error <= upper_bound
                && upper_bound <= control_line,
        }
    }
}

pub fn compare(
    params: &DistParams,
    controls: &ErrorControls,
    method: Method,
    config: &OracleConfig,
) -> Result<ErrorReport> {
    let report = cdf(params, controls, method)?;
    let p_oracle = direct_cdf(params, config)?;
    Ok(ErrorReport::new(p_oracle, report.p_hat, report.upper_bound, report.control_line))
}
