//! Doubly non-central beta and F distribution functions with a-priori,
//! user-settable error bounds.
//!
//! The CDF of the doubly non-central beta distribution is the sum of a
//! doubly infinite matrix of Poisson-weighted incomplete beta values
//! ([`series`]). The two evaluators in [`div`] walk that matrix row by row
//! or column by column, truncating each line as soon as its Poisson mass
//! bound drops below a per-line budget, and stop adding lines once the
//! remaining Poisson tail is below a tail budget. Every result comes with a
//! computable upper bound on the omitted mass.
//!
//! [`oracle`] sums a large rectangle of the same matrix directly and serves
//! as ground truth. [`special`] holds the incomplete beta machinery.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
// Negated comparisons are deliberate: they reject NaN along with the
// out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod div;
pub mod error;
pub mod oracle;
pub mod reference;
pub mod series;
pub mod special;

pub use div::{
    cdf, cdf_with, div1_cdf, div2_cdf, f_cdf, find_boundary, line_sum_adaptive, Axis, CdfReport,
    ErrorControls, LineDiagnostic, Method,
};
pub use error::{Error, Result};
pub use oracle::{compare, direct_cdf, direct_sum, line_exact, ErrorReport, OracleConfig};
pub use series::{
    matrix_item, matrix_slab, matrix_slab_with, poisson_tail, poisson_weights, DistParams,
    IncBetaStrategy, MatrixSlab, SlabOptions,
};
pub use special::{log_gamma, reg_inc_beta, BetaArgs};
