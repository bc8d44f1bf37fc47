//! Serialized records. JSON numbers carry 17 significant digits so every
//! double survives a print/parse round trip; CSV cells use the shortest
//! decimal form that parses back to the same double.

use serde::ser::Error as _;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use dncbeta_core::{CdfReport, DistParams, ErrorReport, LineDiagnostic, MatrixSlab};

pub const SCHEMA_VERSION: &str = "1";

/// A double written with 17 significant digits; non-finite values become
/// `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        RawValue::from_string(format!("{:.16e}", self.0))
            .map_err(S::Error::custom)?
            .serialize(s)
    }
}

/// Shortest decimal that parses back to `v`.
pub fn shortest(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-4..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

/// Compact human-readable number for plain output.
pub fn human(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 {
        "0".into()
    } else if (1e-3..1e5).contains(&a) {
        format!("{v:.7}")
    } else {
        format!("{v:.3e}")
    }
}

#[derive(Debug, Serialize)]
pub struct ParamsOut {
    pub a: Num,
    pub b: Num,
    pub delta1: Num,
    pub delta2: Num,
    pub x: Num,
}

impl From<&DistParams> for ParamsOut {
    fn from(p: &DistParams) -> Self {
        ParamsOut { a: Num(p.a), b: Num(p.b), delta1: Num(p.delta1), delta2: Num(p.delta2), x: Num(p.x) }
    }
}

#[derive(Debug, Serialize)]
pub struct LineOut {
    pub index: usize,
    pub trunc_count: usize,
    pub partial_sum: Num,
    pub residual_bound: Num,
}

impl From<&LineDiagnostic> for LineOut {
    fn from(l: &LineDiagnostic) -> Self {
        LineOut {
            index: l.index,
            trunc_count: l.trunc_count,
            partial_sum: Num(l.partial_sum),
            residual_bound: Num(l.residual_bound),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct OracleOut {
    pub p_oracle: Num,
    pub p_method: Num,
    pub error: Num,
    pub upper_bound: Num,
    pub control_line: Num,
    pub bound_respected: bool,
}

impl From<&ErrorReport> for OracleOut {
    fn from(r: &ErrorReport) -> Self {
        OracleOut {
            p_oracle: Num(r.p_oracle),
            p_method: Num(r.p_method),
            error: Num(r.error),
            upper_bound: Num(r.upper_bound),
            control_line: Num(r.control_line),
            bound_respected: r.bound_respected,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MethodOut {
    pub method: &'static str,
    pub p_hat: Num,
    pub upper_bound: Num,
    pub control_line: Num,
    pub boundary: usize,
    pub item_count: usize,
    pub lines: Vec<LineOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleOut>,
}

impl MethodOut {
    pub fn new(report: &CdfReport, oracle: Option<&ErrorReport>) -> Self {
        MethodOut {
            method: report.method.name(),
            p_hat: Num(report.p_hat),
            upper_bound: Num(report.upper_bound),
            control_line: Num(report.control_line),
            boundary: report.boundary,
            item_count: report.item_count,
            lines: report.lines.iter().map(LineOut::from).collect(),
            oracle: oracle.map(OracleOut::from),
        }
    }
}

/// Echo of every input of a CDF command.
#[derive(Debug, Serialize)]
pub struct CdfEcho {
    pub name: &'static str,
    pub n1: Num,
    pub n2: Num,
    pub lambda1: Num,
    pub lambda2: Num,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<Num>,
    pub shape_form: bool,
    pub method: &'static str,
    pub eps_line: Num,
    pub eps_tail: Num,
    pub format: &'static str,
    pub compare_oracle: bool,
}

#[derive(Debug, Serialize)]
pub struct CdfRecord {
    pub schema_version: &'static str,
    pub command: CdfEcho,
    pub params: ParamsOut,
    pub results: Vec<MethodOut>,
}

#[derive(Debug, Serialize)]
pub struct DumpEcho {
    pub name: &'static str,
    pub n1: Num,
    pub n2: Num,
    pub lambda1: Num,
    pub lambda2: Num,
    pub x: Num,
    pub shape_form: bool,
    pub rows: usize,
    pub cols: usize,
    pub out: String,
}

#[derive(Debug, Serialize)]
pub struct SlabMeta {
    pub rows: usize,
    pub cols: usize,
    pub total: Num,
    pub residual_bound: Num,
    pub argmax_row: usize,
    pub argmax_col: usize,
    pub max_item: Num,
}

impl SlabMeta {
    pub fn new(slab: &MatrixSlab, residual_bound: f64) -> Self {
        let (j, l, v) = slab.argmax();
        SlabMeta {
            rows: slab.rows,
            cols: slab.cols,
            total: Num(slab.total()),
            residual_bound: Num(residual_bound),
            argmax_row: j,
            argmax_col: l,
            max_item: Num(v),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DumpRecord {
    pub schema_version: &'static str,
    pub command: DumpEcho,
    pub params: ParamsOut,
    pub slab: SlabMeta,
}

/// Writes the slab as CSV: header `j\l,0,…,L−1`, then one row per `j`.
pub fn write_slab_csv<W: std::io::Write>(slab: &MatrixSlab, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec![r"j\l".to_string()];
    header.extend((0..slab.cols).map(|l| l.to_string()));
    w.write_record(&header)?;
    for j in 0..slab.rows {
        let mut record = vec![j.to_string()];
        record.extend(slab.row(j).iter().map(|&v| shortest(v)));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    // Only plain structs of numbers and strings are serialized, which cannot
    // fail.
    serde_json::to_string_pretty(value).expect("record serialization")
}
