//! Command-line interface: argument definitions, rendering and exit codes.
//!
//! [`run`] writes to caller-supplied streams and returns the process exit
//! code, so the binary is a thin wrapper and tests can drive it in-process.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::corpus::{self, Check, RunOptions, RunRecord, Status, Summary};
use crate::error::{Error, ExitCategory};
use crate::formulas::{degree_report, CurveInput, DegreeReport, FormulaDiagnostics, FormulaOptions, ImplicitCurve, Method};
use crate::oracle::{self, DistanceMode, OracleDegrees, OracleOptions};
use crate::parser::{bind_parameters, parse_in_role, parse_rational, ExprRole};
use crate::poly::{Poly, ResultantMethod, Universe};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "offdeg", version, about = "Partial and distance degrees of generic offset curves")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GlobalArgs {
    /// Emit JSON instead of a text table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Substitute a parameter by a rational value (repeatable).
    #[arg(long = "param", value_name = "NAME=RAT", global = true)]
    pub params: Vec<String>,
    /// Keep parameters as ring variables, ignoring substitutions.
    #[arg(long, global = true)]
    pub symbolic: bool,
    /// Resultant algorithm for the degree formulae.
    #[arg(long, value_name = "prs|bareiss|interp", default_value = "prs", global = true)]
    pub resultant: ResultantMethod,
    /// Report every timing as zero, making output reproducible byte for byte.
    #[arg(long, global = true)]
    pub no_timings: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Degrees for an implicit curve f(y1, y2) = 0.
    Implicit {
        /// Polynomial in y1, y2 and optional parameters, e.g. "y1^2+y2^2-r^2".
        poly: String,
    },
    /// Partial degrees for a rational parametrization (X/W, Y/W) in t.
    Parametric {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value = "1")]
        w: String,
        /// Divide out a common factor of X, Y and W instead of failing.
        #[arg(long)]
        reduce: bool,
    },
    /// Recompute a fixture of known degrees (defaults to the bundled table).
    Corpus {
        fixture: Option<PathBuf>,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        /// Only entries whose name contains this text (case-insensitive).
        #[arg(long)]
        filter: Option<String>,
    },
    /// Compare the formulae against brute-force elimination (small curves).
    OracleCheck {
        poly: String,
        /// Specialize the distance to a random rational drawn from the seed.
        #[arg(long, conflicts_with = "d0")]
        specialized: bool,
        /// Specialize the distance to this rational.
        #[arg(long, value_name = "RAT")]
        d0: Option<String>,
        #[arg(long, default_value_t = OracleOptions::default().seed)]
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonDiagnostics {
    /// Of the first formula (`delta1` or `delta1_A`).
    pub resultant_degree: i64,
    pub content_degree: i64,
    /// Total over all formulae.
    pub ms: f64,
    pub formulas: Vec<FormulaDiagnostics>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonError {
    pub exit_code: i32,
    pub message: String,
}

/// One result in the stable machine-readable schema.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonRecord {
    pub schema: u32,
    pub name: String,
    pub delta1: Option<u32>,
    pub delta2: Option<u32>,
    pub delta_d: Option<u32>,
    pub method: Option<Method>,
    pub diagnostics: Option<JsonDiagnostics>,
    pub pass: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<Status>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    /// Parametric input: degrees from the closed form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<JsonError>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl JsonRecord {
    pub fn from_report(name: &str, report: &DegreeReport, timings: bool) -> Self {
        let formulas: Vec<FormulaDiagnostics> = report
            .diagnostics
            .iter()
            .map(|d| FormulaDiagnostics {
                ms: if timings { d.ms } else { 0.0 },
                ..d.clone()
            })
            .collect();
        let first = formulas.first();
        JsonRecord {
            schema: SCHEMA_VERSION,
            name: name.to_string(),
            delta1: Some(report.delta1),
            delta2: Some(report.delta2),
            delta_d: report.delta_d,
            method: Some(report.method),
            diagnostics: Some(JsonDiagnostics {
                resultant_degree: first.map_or(0, |d| d.resultant_degree),
                content_degree: first.map_or(0, |d| d.content_degree),
                ms: formulas.iter().map(|d| d.ms).sum(),
                formulas,
            }),
            pass: None,
            status: None,
            checks: Vec::new(),
            closed_form: report.closed_form.map(|(a, b)| [a, b]),
            agreement: report.agreement(),
            error: None,
            notes: report.notes.clone(),
        }
    }

    pub fn from_error(name: &str, category: ExitCategory, message: &str) -> Self {
        JsonRecord {
            schema: SCHEMA_VERSION,
            name: name.to_string(),
            delta1: None,
            delta2: None,
            delta_d: None,
            method: None,
            diagnostics: None,
            pass: None,
            status: None,
            checks: Vec::new(),
            closed_form: None,
            agreement: None,
            error: Some(JsonError {
                exit_code: category.code(),
                message: message.to_string(),
            }),
            notes: Vec::new(),
        }
    }

    pub fn from_run(rec: &RunRecord, timings: bool) -> Self {
        let mut out = match (&rec.report, &rec.error) {
            (Some(r), _) => JsonRecord::from_report(&rec.name, r, timings),
            (None, Some((cat, msg))) => JsonRecord::from_error(&rec.name, *cat, msg),
            (None, None) => JsonRecord::from_error(&rec.name, ExitCategory::Internal, "no result"),
        };
        out.pass = Some(rec.status == Status::Pass);
        out.status = Some(rec.status);
        out.checks = rec.checks.clone();
        if let Some(p) = &rec.parametric {
            out.closed_form = p.closed_form.map(|(a, b)| [a, b]);
            out.agreement = p.agreement();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonCorpus {
    pub schema: u32,
    pub summary: Summary,
    pub records: Vec<JsonRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonDiscarded {
    pub factor: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonAttempt {
    pub d0: String,
    pub delta1: u32,
    pub delta2: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonOracle {
    pub schema: u32,
    pub name: String,
    pub mode: String,
    pub seed: u64,
    pub oracle: OracleDegrees,
    pub formula: OracleDegrees,
    pub agree: bool,
    pub attempts: Vec<JsonAttempt>,
    pub kept_factors: usize,
    pub discarded_factors: Vec<JsonDiscarded>,
    pub g_candidate: String,
    pub ms: f64,
}

/// Parses the binary's arguments and runs the selected command.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { ExitCategory::Validation.code() } else { 0 };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            code
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Implicit { poly } => cmd_implicit(&cli.global, poly, out),
        Command::Parametric { x, y, w, reduce } => cmd_parametric(&cli.global, x, y, w, *reduce, out),
        Command::Corpus {
            fixture,
            parallel,
            filter,
        } => cmd_corpus(&cli.global, fixture.as_deref(), *parallel, filter.as_deref(), out),
        Command::OracleCheck {
            poly,
            specialized,
            d0,
            seed,
        } => cmd_oracle_check(&cli.global, poly, *specialized, d0.as_deref(), *seed, out),
    };
    match result {
        Ok(category) => category.code(),
        Err(CliFailure { category, message, name }) => {
            if cli.global.json {
                let rec = JsonRecord::from_error(&name, category, &message);
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&rec).expect("serializable"));
            }
            let _ = writeln!(err, "error: {message}");
            category.code()
        }
    }
}

struct CliFailure {
    category: ExitCategory,
    message: String,
    name: String,
}

impl CliFailure {
    fn new(name: &str, e: impl Into<Error>) -> Self {
        let e = e.into();
        CliFailure {
            category: e.category(),
            message: e.to_string(),
            name: name.to_string(),
        }
    }
}

type CmdResult = Result<ExitCategory, CliFailure>;

pub fn parse_param_flags(flags: &[String]) -> Result<BTreeMap<String, BigRational>, Error> {
    let mut out = BTreeMap::new();
    for f in flags {
        let (name, value) = f
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("--param expects NAME=RAT, got `{f}`")))?;
        let name = name.trim();
        if name.is_empty() || crate::poly::is_reserved(name) {
            return Err(Error::Input(format!("`{name}` is not a parameter name")));
        }
        if out.insert(name.to_string(), parse_rational(value)?).is_some() {
            return Err(Error::Input(format!("parameter `{name}` given twice")));
        }
    }
    Ok(out)
}

/// Parses each source in its role into a shared universe and substitutes
/// the `NAME=RAT` values unless `symbolic` is set. Every name must occur in
/// some input.
pub fn parse_inputs(
    sources: &[(&str, ExprRole)],
    params: &[String],
    symbolic: bool,
) -> Result<(Vec<Poly>, Universe), Error> {
    let values = parse_param_flags(params)?;
    let mut universe = Universe::new();
    let mut polys = Vec::new();
    for (src, role) in sources {
        polys.push(parse_in_role(src, *role, &mut universe)?);
    }
    for name in values.keys() {
        if universe.lookup(name).is_none() {
            return Err(Error::Input(format!("--param {name}: no such parameter in the input")));
        }
    }
    if !symbolic {
        polys = polys.iter().map(|p| bind_parameters(p, &universe, &values)).collect();
    }
    Ok((polys, universe))
}

fn formula_options(global: &GlobalArgs) -> FormulaOptions {
    FormulaOptions {
        resultant: global.resultant,
    }
}

fn ms(global: &GlobalArgs, v: f64) -> String {
    if global.no_timings {
        "-".to_string()
    } else {
        format!("{v:.1}")
    }
}

fn render_report(global: &GlobalArgs, name: &str, report: &DegreeReport, out: &mut dyn Write) -> std::io::Result<()> {
    if global.json {
        let rec = JsonRecord::from_report(name, report, !global.no_timings);
        return writeln!(out, "{}", serde_json::to_string_pretty(&rec).expect("serializable"));
    }
    let dd = report.delta_d.map_or("unavailable".to_string(), |d| d.to_string());
    writeln!(out, "input    {name}")?;
    writeln!(out, "method   {}", method_name(report.method))?;
    writeln!(out, "delta1   {}", report.delta1)?;
    writeln!(out, "delta2   {}", report.delta2)?;
    writeln!(out, "delta_d  {dd}")?;
    if let Some((b1, b2)) = report.closed_form {
        let verdict = if report.agreement() == Some(true) { "agree" } else { "DISAGREE" };
        writeln!(out, "closed form: delta1 {b1}, delta2 {b2} ({verdict})")?;
    }
    writeln!(out)?;
    writeln!(out, "{:<10} {:>10} {:>8} {:>9}", "formula", "resultant", "content", "ms")?;
    for d in &report.diagnostics {
        writeln!(
            out,
            "{:<10} {:>10} {:>8} {:>9}",
            d.formula,
            d.resultant_degree,
            d.content_degree,
            ms(global, d.ms)
        )?;
    }
    for note in &report.notes {
        writeln!(out, "note: {note}")?;
    }
    Ok(())
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Implicit => "implicit",
        Method::Parametric => "parametric",
    }
}

fn io_failure(name: &str, e: std::io::Error) -> CliFailure {
    CliFailure {
        category: ExitCategory::Internal,
        message: format!("write failed: {e}"),
        name: name.to_string(),
    }
}

pub fn implicit_report(global: &GlobalArgs, poly: &str) -> Result<DegreeReport, Error> {
    let (mut fs, universe) = parse_inputs(&[(poly, ExprRole::ImplicitCurve)], &global.params, global.symbolic)?;
    let f = fs.remove(0);
    let curve = ImplicitCurve::validate(f, &universe)?;
    Ok(degree_report(CurveInput::Implicit(&curve), &formula_options(global))?)
}

fn cmd_implicit(global: &GlobalArgs, poly: &str, out: &mut dyn Write) -> CmdResult {
    let report = implicit_report(global, poly).map_err(|e| CliFailure::new(poly, e))?;
    render_report(global, poly, &report, out).map_err(|e| io_failure(poly, e))?;
    Ok(ExitCategory::Success)
}

fn cmd_parametric(global: &GlobalArgs, x: &str, y: &str, w: &str, reduce: bool, out: &mut dyn Write) -> CmdResult {
    let name = format!("({x}, {y}, {w})");
    let report = (|| -> Result<DegreeReport, Error> {
        let (mut ps, universe) = parse_inputs(
            &[
                (x, ExprRole::ParamNumeratorX),
                (y, ExprRole::ParamNumeratorY),
                (w, ExprRole::ParamDenominator),
            ],
            &global.params,
            global.symbolic,
        )?;
        let (wp, yp, xp) = (ps.pop().unwrap(), ps.pop().unwrap(), ps.pop().unwrap());
        let p = crate::formulas::RationalParametrization::new(xp, yp, wp, reduce, &universe)?;
        Ok(degree_report(CurveInput::Parametric(&p), &formula_options(global))?)
    })()
    .map_err(|e| CliFailure::new(&name, e))?;
    render_report(global, &name, &report, out).map_err(|e| io_failure(&name, e))?;
    Ok(if report.agreement() == Some(false) {
        ExitCategory::Internal
    } else {
        ExitCategory::Success
    })
}

fn cmd_corpus(
    global: &GlobalArgs,
    fixture: Option<&std::path::Path>,
    parallel: usize,
    filter: Option<&str>,
    out: &mut dyn Write,
) -> CmdResult {
    let label = fixture.map_or(corpus::DEGREE_TABLE_PATH.to_string(), |p| p.display().to_string());
    let entries = match fixture {
        None => corpus::degree_table(),
        Some(p) => corpus::load_fixture(p).map_err(|e| CliFailure {
            category: e.category(),
            message: e.to_string(),
            name: label.clone(),
        })?,
    };
    if !global.params.is_empty() {
        return Err(CliFailure::new(
            &label,
            Error::Input("--param does not apply to corpus runs; substitutions come from the fixture".into()),
        ));
    }
    let selected = corpus::select(&entries, filter);
    let opts = RunOptions {
        symbolic: global.symbolic,
        formula: formula_options(global),
        parallel,
    };
    let records = corpus::run_corpus(&selected, &opts);
    let summary = Summary::of(&records);
    render_corpus(global, &records, &summary, out).map_err(|e| io_failure(&label, e))?;
    Ok(if summary.all_accepted() {
        ExitCategory::Success
    } else {
        ExitCategory::Internal
    })
}

pub fn corpus_json(records: &[RunRecord], timings: bool) -> JsonCorpus {
    JsonCorpus {
        schema: SCHEMA_VERSION,
        summary: Summary::of(records),
        records: records.iter().map(|r| JsonRecord::from_run(r, timings)).collect(),
    }
}

fn render_corpus(global: &GlobalArgs, records: &[RunRecord], summary: &Summary, out: &mut dyn Write) -> std::io::Result<()> {
    if global.json {
        let doc = corpus_json(records, !global.no_timings);
        return writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    }
    if !records.is_empty() {
        writeln!(
            out,
            "{:<24} {:>6} {:>6} {:>7}  {:<12} {:<6} {:>9}",
            "entry", "delta1", "delta2", "delta_d", "expected", "status", "ms"
        )?;
    }
    for r in records {
        let expected = r
            .checks
            .iter()
            .filter(|c| !c.field.starts_with("parametric"))
            .map(|c| c.expected.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let (d1, d2, dd) = match &r.report {
            Some(rep) => (
                rep.delta1.to_string(),
                rep.delta2.to_string(),
                rep.delta_d.map_or("-".into(), |d| d.to_string()),
            ),
            None => ("-".into(), "-".into(), "-".into()),
        };
        let status = match r.status {
            Status::Pass => "pass",
            Status::Warn => "WARN",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        writeln!(
            out,
            "{:<24} {:>6} {:>6} {:>7}  {:<12} {:<6} {:>9}",
            r.name,
            d1,
            d2,
            dd,
            format!("({expected})"),
            status,
            ms(global, r.wall_ms)
        )?;
        for c in r.checks.iter().filter(|c| !c.ok()) {
            writeln!(out, "    {}: expected {}, computed {}", c.field, c.expected, c.computed)?;
        }
        if let Some((_, msg)) = &r.error {
            writeln!(out, "    error: {msg}")?;
        }
    }
    writeln!(
        out,
        "{} entries: {} pass, {} warn, {} fail, {} error",
        summary.entries, summary.pass, summary.warn, summary.fail, summary.error
    )
}

fn cmd_oracle_check(
    global: &GlobalArgs,
    poly: &str,
    specialized: bool,
    d0: Option<&str>,
    seed: u64,
    out: &mut dyn Write,
) -> CmdResult {
    let fail = |e: Error| CliFailure::new(poly, e);
    let start = std::time::Instant::now();
    let (mut fs, universe) =
        parse_inputs(&[(poly, ExprRole::ImplicitCurve)], &global.params, global.symbolic).map_err(fail)?;
    let f = fs.remove(0);
    let curve = ImplicitCurve::validate(f, &universe).map_err(|e| fail(e.into()))?;
    let opts = OracleOptions {
        seed,
        ..OracleOptions::default()
    };
    let d0 = d0.map(parse_rational).transpose().map_err(|e| fail(e.into()))?;
    let (result, attempts) = if specialized || d0.is_some() {
        let outcome = oracle::specialized_oracle(&curve, d0, &opts).map_err(|e| fail(e.into()))?;
        (outcome.result, outcome.attempts)
    } else {
        let res = oracle::eliminate(&curve, DistanceMode::Symbolic, &opts).map_err(|e| fail(e.into()))?;
        (res, Vec::new())
    };
    let oracle_degrees = result.degrees();
    let report = degree_report(CurveInput::Implicit(&curve), &formula_options(global)).map_err(|e| fail(e.into()))?;
    let formula = OracleDegrees {
        delta1: report.delta1,
        delta2: report.delta2,
        delta_d: oracle_degrees.delta_d.and(report.delta_d),
    };
    let agree = formula == oracle_degrees;
    let mode = match &result.mode {
        DistanceMode::Symbolic => "symbolic-d".to_string(),
        DistanceMode::Specialized(d) => format!("specialized-d (d0 = {d})"),
    };
    let doc = JsonOracle {
        schema: SCHEMA_VERSION,
        name: poly.to_string(),
        mode,
        seed,
        oracle: oracle_degrees,
        formula,
        agree,
        attempts: attempts
            .iter()
            .map(|a| JsonAttempt {
                d0: a.d0.to_string(),
                delta1: a.degrees.delta1,
                delta2: a.degrees.delta2,
            })
            .collect(),
        kept_factors: result.kept.len(),
        discarded_factors: result
            .discarded
            .iter()
            .map(|(p, r)| JsonDiscarded {
                factor: p.to_string(),
                reason: r.to_string(),
            })
            .collect(),
        g_candidate: result.g_candidate.to_string(),
        ms: if global.no_timings { 0.0 } else { start.elapsed().as_secs_f64() * 1e3 },
    };
    render_oracle(global, &doc, out).map_err(|e| io_failure(poly, e))?;
    Ok(if agree {
        ExitCategory::Success
    } else {
        ExitCategory::Internal
    })
}

fn render_oracle(global: &GlobalArgs, doc: &JsonOracle, out: &mut dyn Write) -> std::io::Result<()> {
    if global.json {
        return writeln!(out, "{}", serde_json::to_string_pretty(doc).expect("serializable"));
    }
    let fmt = |d: &OracleDegrees| {
        format!(
            "delta1 {}, delta2 {}, delta_d {}",
            d.delta1,
            d.delta2,
            d.delta_d.map_or("-".into(), |v| v.to_string())
        )
    };
    writeln!(out, "input    {}", doc.name)?;
    writeln!(out, "mode     {} (seed {})", doc.mode, doc.seed)?;
    writeln!(out, "oracle   {}", fmt(&doc.oracle))?;
    writeln!(out, "formula  {}", fmt(&doc.formula))?;
    writeln!(out, "verdict  {}", if doc.agree { "agree" } else { "DISAGREE" })?;
    for a in &doc.attempts {
        writeln!(out, "attempt  d0 = {}: delta1 {}, delta2 {}", a.d0, a.delta1, a.delta2)?;
    }
    writeln!(out, "kept factors: {}", doc.kept_factors)?;
    for d in &doc.discarded_factors {
        let text = if d.factor.len() > 72 { format!("{}...", &d.factor[..69]) } else { d.factor.clone() };
        writeln!(out, "discarded: {text} ({})", d.reason)?;
    }
    if doc.g_candidate.len() <= 2000 {
        writeln!(out, "g = {}", doc.g_candidate)?;
    }
    Ok(())
}
