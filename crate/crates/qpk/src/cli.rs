//! Command-line verifier: argument parsing, dispatch and machine-readable
//! reports.
//!
//! Exit codes: `0` every requested check passed, `1` a verification failed,
//! `2` usage or parse error, `3` a numeric guard tripped.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use qpk_core::coeff::Rat;
use qpk_core::groupoid::{self, DottedTriangulation, MMode, MoveWord, RelationCheck};
use qpk_core::hopf::Variant;
use qpk_core::reps::{identity_catalog, verify_symbolic, CatalogEntry, NumericProfile, Suite};
use qpk_core::weylalg::Term;
pub use qpk_core::script::{parse_script, ProofScript};

use crate::numerics::{dense_oracle, random_gaussians, Engine, GridConfig, GridState, NumericsError};
use crate::qdilog::{self, ContourSpec, Method};

pub const SCHEMA: &str = "qpk-report/1";
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Environment variable read for the default `ℏ`.
pub const HBAR_ENV: &str = "QPK_HBAR";
/// Largest grid (complex samples per state) the verifier will allocate.
pub const MAX_GRID_SAMPLES: usize = 1 << 24;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qpk", version, about = "Verify quantum pseudo-Kähler plane operator identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Special-function evaluation.
    Fn {
        #[command(subcommand)]
        cmd: FnCmd,
    },
    /// Verify catalog identities symbolically and/or on a grid.
    Verify(VerifyArgs),
    /// Inspect the identity catalog.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Kashaev groupoid: relations, move compilation, connectivity.
    Groupoid {
        #[command(subcommand)]
        cmd: GroupoidCmd,
    },
    /// Dense-matrix cross-checks.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum FnCmd {
    /// Evaluate a function at the given points and write a CSV table.
    Eval(EvalArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// ψ^q(z) with q = e^{−πℏ}.
    #[value(name = "psi")]
    PsiQ,
    /// Φ^ℏ(z).
    #[value(name = "phi")]
    PhiHbar,
    /// Φ^{εiℏ}(z).
    #[value(name = "phi-mdc")]
    PhiMdc,
    /// Ψ^ℏ(x + iy).
    #[value(name = "Psi")]
    BigPsi,
    /// F₀(x, y).
    #[value(name = "F0")]
    F0,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Ratio,
    Contour,
    Both,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    #[arg(long, env = HBAR_ENV, default_value_t = 0.4)]
    pub hbar: f64,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub eps: i8,
    #[arg(long, value_enum, default_value_t = MethodArg::Ratio)]
    pub method: MethodArg,
    /// CSV with columns `re,im`.
    #[arg(long)]
    pub points: Option<PathBuf>,
    /// A single point `re,im` (repeatable; use `--at=-1,0` for negatives).
    #[arg(long, value_parser = parse_point)]
    pub at: Vec<(f64, f64)>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Symbolic,
    Numeric,
    Both,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Catalog entry name (case-insensitive).
    #[arg(long, required_unless_present = "all", conflicts_with = "all")]
    pub identity: Option<String>,
    #[arg(long)]
    pub all: bool,
    #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
    pub mode: Mode,
    #[arg(long, env = HBAR_ENV, default_value_t = 0.4)]
    pub hbar: f64,
    /// Points per axis; defaults to 32 for one or two slots, 8 for three.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, default_value_t = 20.0)]
    pub length: f64,
    /// Value substituted for the formal `m` in numeric mode.
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, default_value_t = 5)]
    pub vectors: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub allow_unbounded: bool,
    /// Worker threads for `--all` (default: available cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// JSON report path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// CSV residual table path.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum CatalogCmd {
    /// One line per entry.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Equations and proof script of one entry.
    Show {
        #[arg(long)]
        identity: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    C,
    D,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::C => Variant::C,
            VariantArg::D => Variant::D,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MArg {
    Formal,
    Value,
}

#[derive(Args, Debug, Clone)]
pub struct MOpts {
    #[arg(long, value_enum, default_value_t = MArg::Formal)]
    pub mode: MArg,
    /// Rational value of `m` for `--mode value`.
    #[arg(long, default_value = "1")]
    pub m: String,
    #[arg(long, value_enum, default_value_t = VariantArg::C)]
    pub variant: VariantArg,
}

#[derive(Subcommand, Debug)]
pub enum GroupoidCmd {
    /// Check every presentation relation over `1..=size`.
    Relations {
        #[arg(long, default_value_t = 3)]
        size: u32,
        #[command(flatten)]
        m: MOpts,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compile a move word to its operator.
    Compile {
        #[arg(long, allow_hyphen_values = true)]
        moves: String,
        #[command(flatten)]
        m: MOpts,
    },
    /// Apply a move word to a triangulation file.
    Apply {
        #[arg(long)]
        triangulation: PathBuf,
        #[arg(long)]
        moves: String,
    },
    /// Count triangulations reachable from the fan of an n-gon.
    Connectivity {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleCmd {
    /// Compare the dense oracle with matrix-free application.
    Dense {
        #[arg(long)]
        identity: String,
        #[arg(long, default_value_t = 4)]
        grid: usize,
        #[arg(long, env = HBAR_ENV, default_value_t = 0.4)]
        hbar: f64,
        #[arg(long, default_value_t = 8.0)]
        length: f64,
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_point(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `re,im`, got `{s}`"))?;
    let f = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    Ok((f(a)?, f(b)?))
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

type CliResult = Result<i32, CliError>;

#[derive(Serialize)]
struct ErrorReport<'a> {
    schema: &'a str,
    engine_version: &'a str,
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: &'a str,
}

/// Parse `argv` (including the program name), run, and return the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let mut out = io::stdout().lock();
    match dispatch(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let (kind, message) = match &e {
                CliError::Usage(m) => ("usage", m.as_str()),
                CliError::Io(m) => ("io", m.as_str()),
            };
            let report = ErrorReport { schema: SCHEMA, engine_version: ENGINE_VERSION, error: ErrorBody { kind, message } };
            eprintln!("{}", serde_json::to_string(&report).unwrap_or_default());
            EXIT_USAGE
        }
    }
}

pub fn dispatch(cmd: Command, out: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Fn { cmd: FnCmd::Eval(a) } => fn_eval(&a, out),
        Command::Verify(a) => verify(&a, out),
        Command::Catalog { cmd } => catalog(cmd, out),
        Command::Groupoid { cmd } => groupoid_cmd(cmd, out),
        Command::Oracle { cmd: OracleCmd::Dense { identity, grid, hbar, length, m, tol, out: path } } => {
            oracle_dense(&identity, grid, hbar, length, m, tol, path.as_deref(), out)
        }
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let s = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    fs::write(path, s + "\n")?;
    Ok(())
}

pub fn find(name: &str) -> Result<CatalogEntry, CliError> {
    identity_catalog()
        .into_iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| CliError::Usage(format!("unknown identity `{name}`; see `qpk catalog list`")))
}

#[derive(Serialize)]
struct EvalRow {
    re: f64,
    im: f64,
    value_re: Option<f64>,
    value_im: Option<f64>,
    abs_err: Option<f64>,
    error: String,
}

fn eval_one(a: &EvalArgs, re: f64, im: f64) -> Result<qdilog::Value, String> {
    let z = C64::new(re, im);
    let method = |m| qdilog::phi_mdc(a.hbar, a.eps, z, m);
    let r = match a.which {
        Which::PsiQ => qdilog::psi_q(C64::new(qdilog::HbarParam::new(a.hbar).map_err(|e| e.to_string())?.q(), 0.0), z),
        Which::PhiHbar => qdilog::phi_hbar(a.hbar, z, &ContourSpec::for_phi_hbar(a.hbar)),
        Which::PhiMdc => match a.method {
            MethodArg::Ratio => method(Method::Ratio),
            MethodArg::Contour => method(Method::Contour),
            MethodArg::Both => {
                return match qdilog::phi_mdc_both(a.hbar, a.eps, z, 1e-8) {
                    Ok((v, w, false)) => Ok(qdilog::Value { value: v.value, abs_err: v.abs_err.max((v.value - w.value).norm()) }),
                    Ok((v, w, true)) => Err(format!("methods disagree: ratio {} contour {}", v.value, w.value)),
                    Err(e) => Err(e.to_string()),
                }
            }
        },
        Which::BigPsi => qdilog::psi_hbar(a.hbar, re, im),
        Which::F0 => Ok(qdilog::Value { value: qdilog::f_zero(re, im), abs_err: 0.0 }),
    };
    r.map_err(|e| e.to_string())
}

fn fn_eval(a: &EvalArgs, out: &mut dyn Write) -> CliResult {
    if a.eps != 1 && a.eps != -1 {
        return Err(CliError::Usage(format!("--eps must be 1 or -1, got {}", a.eps)));
    }
    let mut points = a.at.clone();
    if let Some(p) = &a.points {
        let mut rd = csv::Reader::from_path(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
        for rec in rd.records() {
            let rec = rec.map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
            let f = |i: usize| -> Result<f64, CliError> {
                rec.get(i)
                    .and_then(|s| s.trim().parse().ok())
                    .ok_or_else(|| CliError::Usage(format!("{}: row {:?} needs numeric `re,im`", p.display(), rec)))
            };
            points.push((f(0)?, f(1)?));
        }
    }
    if points.is_empty() {
        return Err(CliError::Usage(String::from("no points: give --points <csv> or --at re,im")));
    }
    let rows: Vec<EvalRow> = points
        .iter()
        .map(|&(re, im)| match eval_one(a, re, im) {
            Ok(v) => EvalRow { re, im, value_re: Some(v.value.re), value_im: Some(v.value.im), abs_err: Some(v.abs_err), error: String::new() },
            Err(e) => EvalRow { re, im, value_re: None, value_im: None, abs_err: None, error: e },
        })
        .collect();
    let failed = rows.iter().any(|r| !r.error.is_empty());
    let sink: Box<dyn Write + '_> = match &a.out {
        Some(p) => Box::new(fs::File::create(p)?),
        None => Box::new(&mut *out),
    };
    let mut w = csv::Writer::from_writer(sink);
    for r in &rows {
        w.serialize(r).map_err(|e| CliError::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(if failed { EXIT_FAIL } else { EXIT_PASS })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Guard,
    Skipped,
}

impl Status {
    fn combine(self, o: Status) -> Status {
        use Status::*;
        match (self, o) {
            (Guard, _) | (_, Guard) => Guard,
            (Fail, _) | (_, Fail) => Fail,
            (Skipped, x) | (x, Skipped) => x,
            _ => Pass,
        }
    }
    fn exit_code(self) -> i32 {
        match self {
            Status::Pass | Status::Skipped => EXIT_PASS,
            Status::Fail => EXIT_FAIL,
            Status::Guard => EXIT_GUARD,
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct StepJson {
    pub line: usize,
    pub rule: String,
    pub equation: usize,
    pub terms_before: usize,
    pub terms_after: usize,
    pub result: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct Failure {
    pub line: usize,
    pub error: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct SymbolicReport {
    pub status: Status,
    pub script: String,
    pub equations_checked: usize,
    pub steps: Vec<StepJson>,
    pub failure: Option<Failure>,
}

#[derive(Serialize, Clone, Debug)]
pub struct NumericParams {
    pub hbar: f64,
    pub grid: usize,
    pub length: f64,
    pub m: f64,
    pub slots: u32,
    pub vectors: usize,
    pub seed: u64,
    pub tol: f64,
    pub allow_unbounded: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct ResidualRow {
    pub identity: String,
    pub equation: usize,
    pub label: String,
    pub vector: usize,
    pub residual: f64,
}

#[derive(Serialize, Clone, Debug)]
pub struct NumericReport {
    pub status: Status,
    pub parameters: Option<NumericParams>,
    pub residuals: Vec<ResidualRow>,
    pub max_residual: Option<f64>,
    pub error: Option<String>,
}

#[derive(Serialize, Clone, Debug)]
pub struct IdentityReport {
    pub identity: String,
    pub paper_ref: String,
    pub suite: String,
    pub mode: String,
    pub status: Status,
    pub symbolic: Option<SymbolicReport>,
    pub numeric: Option<NumericReport>,
}

#[derive(Serialize, Clone, Debug)]
pub struct VerifyReport {
    pub schema: String,
    pub engine_version: String,
    pub command: String,
    pub status: Status,
    pub reports: Vec<IdentityReport>,
}

pub fn symbolic_report(e: &CatalogEntry) -> SymbolicReport {
    let r = verify_symbolic(e);
    let steps = r
        .steps
        .iter()
        .map(|s| StepJson {
            line: s.line,
            rule: s.rule.clone(),
            equation: s.equation,
            terms_before: s.terms_before,
            terms_after: s.terms_after,
            result: s.result.clone(),
        })
        .collect();
    let failure = r.failure.as_ref().map(|(line, err)| Failure { line: *line, error: err.to_string() });
    SymbolicReport {
        status: if failure.is_none() { Status::Pass } else { Status::Fail },
        script: e.script_path.to_string(),
        equations_checked: r.equations_checked,
        steps,
        failure,
    }
}

pub fn default_grid(slots: u32) -> usize {
    if slots <= 2 {
        32
    } else {
        8
    }
}

pub fn numeric_report(e: &CatalogEntry, a: &VerifyArgs) -> Result<NumericReport, CliError> {
    let slots = match e.numeric {
        NumericProfile::SymbolicOnly(reason) => {
            return Ok(NumericReport {
                status: Status::Skipped,
                parameters: None,
                residuals: vec![],
                max_residual: None,
                error: Some(format!("symbolic only: {reason}")),
            })
        }
        NumericProfile::Numeric { slots } => slots,
    };
    let n = a.grid.unwrap_or_else(|| default_grid(slots));
    let samples = n.checked_pow(2 * slots).unwrap_or(usize::MAX);
    if samples > MAX_GRID_SAMPLES {
        return Err(CliError::Usage(format!("{}: N = {n} over {} axes needs {samples} samples (limit {MAX_GRID_SAMPLES})", e.name, 2 * slots)));
    }
    let mut cfg = GridConfig::new(n, a.length, a.hbar, slots).map_err(|x| CliError::Usage(x.to_string()))?.with_m(a.m);
    cfg.allow_unbounded = a.allow_unbounded;
    let params = NumericParams {
        hbar: a.hbar,
        grid: n,
        length: a.length,
        m: a.m,
        slots,
        vectors: a.vectors,
        seed: a.seed,
        tol: a.tol,
        allow_unbounded: a.allow_unbounded,
    };
    let vs = random_gaussians(&cfg, a.vectors, a.seed);
    let engine = Engine::new(cfg);
    let mut rows = Vec::new();
    let mut error = None;
    let mut status = Status::Pass;
    for (i, eq) in e.equations.iter().enumerate() {
        match engine.residual(eq, &vs) {
            Ok(rs) => rows.extend(rs.into_iter().enumerate().map(|(k, r)| ResidualRow {
                identity: e.name.clone(),
                equation: i,
                label: eq.label.clone(),
                vector: k,
                residual: r,
            })),
            Err(err) => {
                status = status.combine(if matches!(err, NumericsError::Guard { .. }) { Status::Guard } else { Status::Fail });
                error = Some(format!("equation {i} ({}): {err}", eq.label));
                break;
            }
        }
    }
    let max = rows.iter().map(|r| r.residual).fold(None, |m: Option<f64>, r| Some(m.map_or(r, |m| m.max(r))));
    if rows.iter().any(|r| !(r.residual <= a.tol)) {
        status = status.combine(Status::Fail);
    }
    Ok(NumericReport { status, parameters: Some(params), residuals: rows, max_residual: max, error })
}

pub fn verify_entry(e: &CatalogEntry, a: &VerifyArgs) -> Result<IdentityReport, CliError> {
    let symbolic = matches!(a.mode, Mode::Symbolic | Mode::Both).then(|| symbolic_report(e));
    let numeric = match a.mode {
        Mode::Numeric | Mode::Both => Some(numeric_report(e, a)?),
        Mode::Symbolic => None,
    };
    let mut status = Status::Skipped;
    if let Some(s) = &symbolic {
        status = status.combine(s.status);
    }
    if let Some(n) = &numeric {
        status = status.combine(n.status);
    }
    Ok(IdentityReport {
        identity: e.name.clone(),
        paper_ref: e.paper_ref.to_string(),
        suite: match e.suite {
            Suite::Main => "main",
            Suite::Variant => "variant",
        }
        .to_string(),
        mode: format!("{:?}", a.mode).to_lowercase(),
        status,
        symbolic,
        numeric,
    })
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> CliResult {
    if a.vectors == 0 {
        return Err(CliError::Usage(String::from("--vectors must be positive")));
    }
    let entries = match &a.identity {
        Some(name) => vec![find(name)?],
        None => identity_catalog(),
    };
    let reports: Vec<IdentityReport> = if entries.len() == 1 {
        vec![verify_entry(&entries[0], a)?]
    } else {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(t) = a.threads {
            b = b.num_threads(t);
        }
        let pool = b.build().map_err(|e| CliError::Io(e.to_string()))?;
        pool.install(|| entries.par_iter().map(|e| verify_entry(e, a)).collect::<Result<Vec<_>, _>>())?
    };
    if a.identity.is_some() && reports[0].status == Status::Skipped {
        let why = reports[0].numeric.as_ref().and_then(|n| n.error.clone()).unwrap_or_default();
        return Err(CliError::Usage(format!("{}: nothing to verify in {:?} mode ({why})", reports[0].identity, a.mode)));
    }
    let status = reports.iter().fold(Status::Skipped, |s, r| s.combine(r.status));
    for r in &reports {
        let mut line = format!("{:<7} {:<28}", format!("{:?}", r.status).to_uppercase(), r.identity);
        if let Some(s) = &r.symbolic {
            line += &format!(" symbolic={:?}", s.status).to_lowercase();
            if let Some(f) = &s.failure {
                line += &format!(" [line {}: {}]", f.line, first_line(&f.error));
            }
        }
        if let Some(n) = &r.numeric {
            line += &format!(" numeric={:?}", n.status).to_lowercase();
            if let Some(m) = n.max_residual {
                line += &format!(" max_residual={m:.3e}");
            }
            if let Some(e) = &n.error {
                line += &format!(" [{}]", first_line(e));
            }
        }
        writeln!(out, "{line}")?;
    }
    let passed = reports.iter().filter(|r| matches!(r.status, Status::Pass)).count();
    writeln!(out, "{passed}/{} passed", reports.len())?;
    let report = VerifyReport {
        schema: SCHEMA.into(),
        engine_version: ENGINE_VERSION.into(),
        command: String::from("verify"),
        status,
        reports,
    };
    if let Some(p) = &a.out {
        write_json(p, &report)?;
    }
    if let Some(p) = &a.csv {
        let mut w = csv::Writer::from_path(p).map_err(|e| CliError::Io(e.to_string()))?;
        for r in report.reports.iter().filter_map(|r| r.numeric.as_ref()) {
            for row in &r.residuals {
                w.serialize(row).map_err(|e| CliError::Io(e.to_string()))?;
            }
        }
        w.flush()?;
    }
    Ok(status.exit_code())
}

fn first_line(s: &str) -> &str {
    s.lines().next().unwrap_or("")
}

#[derive(Serialize)]
struct CatalogRow {
    name: String,
    suite: String,
    paper_ref: String,
    numeric: String,
    script: String,
    equations: usize,
}

fn catalog(cmd: CatalogCmd, out: &mut dyn Write) -> CliResult {
    match cmd {
        CatalogCmd::List { json } => {
            let rows: Vec<CatalogRow> = identity_catalog()
                .into_iter()
                .map(|e| CatalogRow {
                    suite: if e.suite == Suite::Main { "main" } else { "variant" }.into(),
                    paper_ref: e.paper_ref.into(),
                    numeric: match e.numeric {
                        NumericProfile::Numeric { slots } => format!("numeric/{slots}"),
                        NumericProfile::SymbolicOnly(_) => "symbolic-only".into(),
                    },
                    script: e.script_path.into(),
                    equations: e.equations.len(),
                    name: e.name,
                })
                .collect();
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&rows).map_err(|e| CliError::Io(e.to_string()))?)?;
            } else {
                for r in &rows {
                    writeln!(out, "{:<24} {:<8} {:<14} {:<32} {}", r.name, r.suite, r.numeric, r.paper_ref, r.script)?;
                }
                writeln!(out, "{} entries", rows.len())?;
            }
            Ok(EXIT_PASS)
        }
        CatalogCmd::Show { identity } => {
            let e = find(&identity)?;
            writeln!(out, "{} ({})", e.name, e.paper_ref)?;
            for (i, eq) in e.equations.iter().enumerate() {
                writeln!(out, "[{i}] {}\n    lhs: {}\n    rhs: {}", eq.label, eq.lhs, eq.rhs)?;
            }
            writeln!(out, "script {}:\n{}", e.script_path, e.script.trim_end())?;
            Ok(EXIT_PASS)
        }
    }
}

fn m_mode(o: &MOpts) -> Result<MMode, CliError> {
    match o.mode {
        MArg::Formal => Ok(MMode::Formal),
        MArg::Value => o.m.trim().parse::<Rat>().map(MMode::Value).map_err(|_| CliError::Usage(format!("--m `{}` is not a rational", o.m))),
    }
}

#[derive(Serialize)]
struct RelationJson {
    kind: String,
    instance: String,
    lhs: String,
    rhs: String,
    status: Status,
    phase: Option<String>,
    expected: String,
    error: Option<String>,
}

fn phase_string(mult: i64, p: &qpk_core::weylalg::Prefactor) -> String {
    Term::scalar(mult, p.clone()).to_string()
}

fn relation_json(c: &RelationCheck) -> RelationJson {
    let (phase, error) = match &c.outcome {
        Ok((m, p)) => (Some(phase_string(*m, p)), None),
        Err(e) => (None, Some(e.clone())),
    };
    RelationJson {
        kind: c.kind.display().into(),
        instance: c.instance.clone(),
        lhs: c.lhs.clone(),
        rhs: c.rhs.clone(),
        status: if c.matches_expected() { Status::Pass } else { Status::Fail },
        phase,
        expected: phase_string(1, &c.expected),
        error,
    }
}

#[derive(Serialize)]
struct RelationsReport {
    schema: String,
    engine_version: String,
    command: String,
    size: u32,
    variant: String,
    m: String,
    status: Status,
    relations: Vec<RelationJson>,
}

fn groupoid_cmd(cmd: GroupoidCmd, out: &mut dyn Write) -> CliResult {
    match cmd {
        GroupoidCmd::Relations { size, m, out: path } => {
            let mode = m_mode(&m)?;
            let checks = groupoid::check_presentation(size, m.variant.into(), &mode).map_err(|e| CliError::Usage(e.to_string()))?;
            let rels: Vec<RelationJson> = checks.iter().map(relation_json).collect();
            for r in &rels {
                let tail = match (&r.phase, &r.error) {
                    (Some(p), _) => format!("phase {p} (expected {})", r.expected),
                    (None, Some(e)) => format!("error {}", first_line(e)),
                    _ => String::new(),
                };
                writeln!(out, "{:<5} {:<10} {:<28} {}  =  {}   {tail}", format!("{:?}", r.status).to_uppercase(), r.kind, r.instance, r.lhs, r.rhs)?;
            }
            let passed = rels.iter().filter(|r| r.status == Status::Pass).count();
            writeln!(out, "{passed}/{} relations hold with the expected phase", rels.len())?;
            let status = if passed == rels.len() { Status::Pass } else { Status::Fail };
            if let Some(p) = path {
                let m_str = match &mode {
                    MMode::Formal => String::from("formal"),
                    MMode::Value(v) => v.to_string(),
                };
                let report = RelationsReport {
                    schema: SCHEMA.into(),
                    engine_version: ENGINE_VERSION.into(),
                    command: String::from("groupoid relations"),
                    size,
                    variant: format!("{:?}", m.variant),
                    m: m_str,
                    status,
                    relations: rels,
                };
                write_json(&p, &report)?;
            }
            Ok(status.exit_code())
        }
        GroupoidCmd::Compile { moves, m } => {
            let w = MoveWord::parse(&moves).map_err(|e| CliError::Usage(e.to_string()))?;
            let t = groupoid::compile_for(m.variant.into(), &w, &m_mode(&m)?);
            writeln!(out, "{}", t.normalize())?;
            Ok(EXIT_PASS)
        }
        GroupoidCmd::Apply { triangulation, moves } => {
            let text = fs::read_to_string(&triangulation)?;
            let dt = DottedTriangulation::parse(&text).map_err(|e| CliError::Usage(format!("{}: {e}", triangulation.display())))?;
            let w = MoveWord::parse(&moves).map_err(|e| CliError::Usage(e.to_string()))?;
            match dt.apply_word(&w) {
                Ok(r) => {
                    write!(out, "{r}")?;
                    Ok(EXIT_PASS)
                }
                Err(e) => {
                    writeln!(out, "inapplicable: {e}")?;
                    Ok(EXIT_FAIL)
                }
            }
        }
        GroupoidCmd::Connectivity { n } => {
            if !(3..=9).contains(&n) {
                return Err(CliError::Usage(format!("n = {n} outside 3..=9")));
            }
            let got = groupoid::reachable_count(&DottedTriangulation::fan(n));
            let want = groupoid::state_count(n);
            writeln!(out, "n={n} reachable={got} expected={want}")?;
            Ok(if got == want { EXIT_PASS } else { EXIT_FAIL })
        }
    }
}

#[derive(Serialize)]
struct OracleRow {
    equation: usize,
    label: String,
    /// Largest entrywise difference over `max(1, largest entry)`.
    lhs_agreement: f64,
    rhs_agreement: f64,
    identity_residual: f64,
}

#[derive(Serialize)]
struct OracleReport {
    schema: String,
    engine_version: String,
    command: String,
    identity: String,
    grid: usize,
    hbar: f64,
    length: f64,
    tol: f64,
    status: Status,
    rows: Vec<OracleRow>,
}

fn agreement(engine: &Engine, s: &qpk_core::weylalg::OperatorSum, cfg: &GridConfig) -> Result<(f64, crate::numerics::DenseMatrix), NumericsError> {
    let dense = dense_oracle(s, cfg)?;
    let (mut worst, mut scale): (f64, f64) = (0.0, 0.0);
    for j in 0..cfg.total() {
        let b = GridState::basis(cfg, j);
        let mf = engine.apply_sum(s, &b)?;
        for (x, y) in mf.data.iter().zip(&dense.apply(&b).data) {
            worst = worst.max((x - y).norm());
            scale = scale.max(y.norm());
        }
    }
    Ok((worst / scale.max(1.0), dense))
}

#[allow(clippy::too_many_arguments)]
fn oracle_dense(identity: &str, grid: usize, hbar: f64, length: f64, m: f64, tol: f64, path: Option<&Path>, out: &mut dyn Write) -> CliResult {
    let e = find(identity)?;
    let slots = match e.numeric {
        NumericProfile::Numeric { slots } => slots,
        NumericProfile::SymbolicOnly(r) => return Err(CliError::Usage(format!("{}: symbolic only ({r})", e.name))),
    };
    let cfg = GridConfig::new(grid, length, hbar, slots).map_err(|x| CliError::Usage(x.to_string()))?.with_m(m);
    let engine = Engine::new(cfg.clone());
    let mut rows = Vec::new();
    let mut status = Status::Pass;
    for (i, eq) in e.equations.iter().enumerate() {
        let run = || -> Result<OracleRow, NumericsError> {
            let (la, l) = agreement(&engine, &eq.lhs, &cfg)?;
            let (ra, r) = agreement(&engine, &eq.rhs, &cfg)?;
            let dim = cfg.total();
            let mut res: f64 = 0.0;
            for a in 0..dim {
                for b in 0..dim {
                    res = res.max((l.get(a, b) - r.get(a, b)).norm());
                }
            }
            Ok(OracleRow { equation: i, label: eq.label.clone(), lhs_agreement: la, rhs_agreement: ra, identity_residual: res })
        };
        match run() {
            Ok(row) => {
                if !(row.lhs_agreement <= tol && row.rhs_agreement <= tol) {
                    status = status.combine(Status::Fail);
                }
                writeln!(
                    out,
                    "[{i}] {}: dense vs matrix-free {:.3e} / {:.3e}, max |L−R| {:.3e}",
                    row.label, row.lhs_agreement, row.rhs_agreement, row.identity_residual
                )?;
                rows.push(row);
            }
            Err(NumericsError::Dimension(d)) => return Err(CliError::Usage(format!("dense dimension {d} exceeds the oracle cap"))),
            Err(err @ NumericsError::Guard { .. }) => {
                writeln!(out, "[{i}] {}: {err}", eq.label)?;
                status = status.combine(Status::Guard);
            }
            Err(err) => {
                writeln!(out, "[{i}] {}: {err}", eq.label)?;
                status = status.combine(Status::Fail);
            }
        }
    }
    writeln!(out, "{}", format!("{status:?}").to_uppercase())?;
    if let Some(p) = path {
        let report = OracleReport {
            schema: SCHEMA.into(),
            engine_version: ENGINE_VERSION.into(),
            command: String::from("oracle dense"),
            identity: e.name,
            grid,
            hbar,
            length,
            tol,
            status,
            rows,
        };
        write_json(p, &report)?;
    }
    Ok(status.exit_code())
}
