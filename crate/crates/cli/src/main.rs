mod args;
mod output;
mod tables;

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use dncbeta_core::{
    cdf, compare, div::f_params, matrix_slab, DistParams, ErrorControls, Method, OracleConfig,
};

use args::{CdfBetaArgs, CdfFArgs, Cli, Command, DistArgs, EvalArgs, Format, MatrixDumpArgs, MethodArg, TablesArgs};
use output::{
    human, shortest, to_json, CdfEcho, CdfRecord, DumpEcho, DumpRecord, MethodOut, Num, ParamsOut,
    SlabMeta, SCHEMA_VERSION,
};

#[derive(Debug)]
enum CliError {
    /// Rejected input: bad parameters, budgets or out-of-range values.
    Input(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

fn input(context: &str) -> impl FnOnce(dncbeta_core::Error) -> CliError + '_ {
    move |e| CliError::Input(format!("{context}: {e}"))
}

const PARAM_FLAGS: &str = "--n1/--n2/--lambda1/--lambda2";

impl DistArgs {
    /// Shape-form values `(a, b, δ₁, δ₂)`.
    fn shapes(&self) -> (f64, f64, f64, f64) {
        if self.shape_form {
            (self.n1, self.n2, self.lambda1, self.lambda2)
        } else {
            (self.n1 / 2.0, self.n2 / 2.0, self.lambda1 / 2.0, self.lambda2 / 2.0)
        }
    }

    fn beta(&self, x: f64) -> Result<DistParams, CliError> {
        let (a, b, d1, d2) = self.shapes();
        DistParams::new(a, b, d1, d2, x).map_err(input(PARAM_FLAGS))
    }
}

fn controls(eval: &EvalArgs) -> Result<ErrorControls, CliError> {
    ErrorControls::new(eval.eps_line, eval.eps_tail).map_err(input("--eps-line/--eps-tail"))
}

fn methods(m: MethodArg) -> &'static [Method] {
    match m {
        MethodArg::Div1 => &[Method::Div1],
        MethodArg::Div2 => &[Method::Div2],
        MethodArg::Both => &[Method::Div1, Method::Div2],
    }
}

fn echo(name: &'static str, dist: &DistArgs, eval: &EvalArgs) -> CdfEcho {
    CdfEcho {
        name,
        n1: Num(dist.n1),
        n2: Num(dist.n2),
        lambda1: Num(dist.lambda1),
        lambda2: Num(dist.lambda2),
        x: None,
        f: None,
        shape_form: dist.shape_form,
        method: eval.method.name(),
        eps_line: Num(eval.eps_line),
        eps_tail: Num(eval.eps_tail),
        format: eval.format.name(),
        compare_oracle: eval.compare_oracle,
    }
}

fn evaluate(params: &DistParams, eval: &EvalArgs, command: CdfEcho) -> Result<String, CliError> {
    let c = controls(eval)?;
    let mut results = Vec::new();
    for &method in methods(eval.method) {
        let report = cdf(params, &c, method).map_err(input(PARAM_FLAGS))?;
        let oracle = if eval.compare_oracle {
            Some(compare(params, &c, method, &OracleConfig::default()).map_err(input("--compare-oracle"))?)
        } else {
            None
        };
        results.push(MethodOut::new(&report, oracle.as_ref()));
    }
    let record = CdfRecord {
        schema_version: SCHEMA_VERSION,
        command,
        params: ParamsOut::from(params),
        results,
    };
    match eval.format {
        Format::Json => Ok(to_json(&record) + "\n"),
        Format::Csv => cdf_csv(&record, eval.compare_oracle),
        Format::Plain => Ok(cdf_plain(params, &record, eval)),
    }
}

fn cdf_csv(record: &CdfRecord, with_oracle: bool) -> Result<String, CliError> {
    let mut header = vec!["method", "p_hat", "upper_bound", "control_line", "boundary", "item_count"];
    if with_oracle {
        header.extend(["p_oracle", "error", "bound_respected"]);
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(&header).map_err(io)?;
    for r in &record.results {
        let mut row = vec![
            r.method.to_string(),
            shortest(r.p_hat.0),
            shortest(r.upper_bound.0),
            shortest(r.control_line.0),
            r.boundary.to_string(),
            r.item_count.to_string(),
        ];
        if let Some(o) = &r.oracle {
            row.extend([shortest(o.p_oracle.0), shortest(o.error.0), o.bound_respected.to_string()]);
        }
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn cdf_plain(params: &DistParams, record: &CdfRecord, eval: &EvalArgs) -> String {
    let mut out = format!(
        "a = {}  b = {}  delta1 = {}  delta2 = {}  x = {}\neps_line = {:e}  eps_tail = {:e}\n",
        params.a, params.b, params.delta1, params.delta2, params.x, eval.eps_line, eval.eps_tail
    );
    for r in &record.results {
        out.push_str(&format!(
            "{}: p_hat = {:.10}  upper_bound = {:.3e}  control_line = {:.3e}  lines = {}  items = {}\n",
            r.method.to_uppercase(),
            r.p_hat.0,
            r.upper_bound.0,
            r.control_line.0,
            r.boundary,
            r.item_count
        ));
        for l in &r.lines {
            out.push_str(&format!(
                "  line {:>3}: items {:>3}  partial {}  residual bound {:.3e}\n",
                l.index,
                l.trunc_count,
                human(l.partial_sum.0),
                l.residual_bound.0
            ));
        }
        if let Some(o) = &r.oracle {
            out.push_str(&format!(
                "  oracle = {:.10}  error = {:.3e}  bound respected: {}\n",
                o.p_oracle.0, o.error.0, o.bound_respected
            ));
        }
    }
    out
}

fn cdf_beta(args: &CdfBetaArgs) -> Result<String, CliError> {
    let params = args.dist.beta(args.x)?;
    let mut command = echo("cdf-beta", &args.dist, &args.eval);
    command.x = Some(Num(args.x));
    evaluate(&params, &args.eval, command)
}

fn cdf_f(args: &CdfFArgs) -> Result<String, CliError> {
    let (a, b, d1, d2) = args.dist.shapes();
    let params = f_params(2.0 * a, 2.0 * b, 2.0 * d1, 2.0 * d2, args.f).map_err(input(PARAM_FLAGS))?;
    let mut command = echo("cdf-f", &args.dist, &args.eval);
    command.f = Some(Num(args.f));
    evaluate(&params, &args.eval, command)
}

fn matrix_dump(args: &MatrixDumpArgs) -> Result<String, CliError> {
    let params = args.dist.beta(args.x)?;
    let slab = matrix_slab(&params, args.rows, args.cols).map_err(input("--x/--rows/--cols"))?;
    let residual = slab.residual_bound().map_err(input(PARAM_FLAGS))?;

    let io = |e: &dyn fmt::Display| CliError::Io(format!("{}: {e}", args.out.display()));
    let file = File::create(&args.out).map_err(|e| io(&e))?;
    output::write_slab_csv(&slab, BufWriter::new(file)).map_err(|e| io(&e))?;

    let record = DumpRecord {
        schema_version: SCHEMA_VERSION,
        command: DumpEcho {
            name: "matrix-dump",
            n1: Num(args.dist.n1),
            n2: Num(args.dist.n2),
            lambda1: Num(args.dist.lambda1),
            lambda2: Num(args.dist.lambda2),
            x: Num(args.x),
            shape_form: args.dist.shape_form,
            rows: args.rows,
            cols: args.cols,
            out: args.out.display().to_string(),
        },
        params: ParamsOut::from(&params),
        slab: SlabMeta::new(&slab, residual),
    };
    Ok(to_json(&record) + "\n")
}

fn tables(args: &TablesArgs) -> Result<String, CliError> {
    let ov = tables::Overrides { lambda1: args.lambda1, lambda2: args.lambda2 };
    let t = tables::build(args.table, args.bench_reps, ov).map_err(input("--table/--lambda1/--lambda2"))?;
    match args.format {
        Format::Plain => Ok(tables::render_plain(&t)),
        Format::Csv => tables::render_csv(&t).map_err(|e| CliError::Io(e.to_string())),
        Format::Json => {
            #[derive(serde::Serialize)]
            struct Echo {
                name: &'static str,
                table: u8,
                bench_reps: usize,
                lambda1: Option<Num>,
                lambda2: Option<Num>,
                format: &'static str,
            }
            #[derive(serde::Serialize)]
            struct Record<'a> {
                schema_version: &'static str,
                command: Echo,
                #[serde(flatten)]
                table: &'a tables::Table,
            }
            let record = Record {
                schema_version: SCHEMA_VERSION,
                command: Echo {
                    name: "tables",
                    table: args.table,
                    bench_reps: args.bench_reps,
                    lambda1: args.lambda1.map(Num),
                    lambda2: args.lambda2.map(Num),
                    format: args.format.name(),
                },
                table: &t,
            };
            Ok(to_json(&record) + "\n")
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let text = match &cli.command {
        Command::CdfBeta(a) => cdf_beta(a)?,
        Command::CdfF(a) => cdf_f(a)?,
        Command::MatrixDump(a) => matrix_dump(a)?,
        Command::Tables(a) => tables(a)?,
    };
    let mut stdout = io::stdout().lock();
    stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
        .map_err(|e| CliError::Io(format!("stdout: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dncbeta: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
