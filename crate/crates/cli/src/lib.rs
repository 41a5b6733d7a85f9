//! `swkb-lab`: sweeps over the SWKB machinery of `swkb-core` with table, JSON
//! and CSV reports.

pub mod report;

use std::f64::consts::{FRAC_PI_2, PI};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use swkb_core::catalog::{catalog_listing, make_model, FamilyId, Params, PotentialModel};
use swkb_core::natanzon::{
    natanzon_exact_energy, natanzon_naive_swkb, natanzon_potential_curve, natanzon_solve_swkb_energy, NatanzonClass,
    NatanzonParams,
};
use swkb_core::numerics::QUAD_TOL;
use swkb_core::pct::{transform_for, verify_energy_map, verify_swkb_transform, Realness};
use swkb_core::pdm::{deformed_swkb_integral, make_deformed, ordinary_swkb_integral, DeformedKind};
use swkb_core::swkb::{relative_error, swkb_check, swkb_solve_energy, SwkbReport};

pub use report::{emit_report, write_report, OutputFormat, ReportError};

/// Environment variable overriding the default tolerance.
pub const TOL_ENV: &str = "SWKB_LAB_TOL";

#[derive(Debug, Parser)]
#[command(name = "swkb-lab", version, about = "SWKB quantization checks for shape-invariant systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the catalog families.
    Catalog(OutputArgs),
    /// Compare the SWKB integral at exact levels against nπ.
    Check(FamilyArgs),
    /// Invert the SWKB condition for the energies.
    Solve(FamilyArgs),
    /// Check the point canonical transformation onto a family.
    Pct(FamilyArgs),
    /// Natanzon systems: oracle vs SWKB energies and the naive integral.
    Natanzon(NatanzonArgs),
    /// Position-dependent-mass oscillators.
    Pdm(PdmArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Highest level.
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    /// Quadrature tolerance (default 1e-10, or $SWKB_LAB_TOL).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Evaluate levels in parallel.
    #[arg(long)]
    pub parallel: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct FamilyArgs {
    /// Family tag, e.g. ho-1d, radial-osc, morse.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long)]
    pub g: Option<f64>,
    #[arg(long)]
    pub h: Option<f64>,
    #[arg(long)]
    pub e2: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub g_tilde: Option<f64>,
    #[arg(long)]
    pub h_tilde: Option<f64>,
    /// Extra parameter as name=value; repeatable.
    #[arg(short = 'p', long = "param", value_name = "NAME=VALUE")]
    pub param: Vec<String>,
    #[command(flatten)]
    pub sweep: SweepArgs,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct NatanzonArgs {
    /// L (Laguerre) or J (Jacobi).
    #[arg(long)]
    pub class: String,
    #[arg(long = "A", default_value_t = 0.0)]
    pub a: f64,
    #[arg(long = "B", default_value_t = 0.0)]
    pub b: f64,
    #[arg(long = "C", default_value_t = 1.0)]
    pub c: f64,
    #[arg(long = "D", default_value_t = 0.0)]
    pub d: f64,
    #[arg(long = "F", default_value_t = 0.0)]
    pub f: f64,
    #[arg(long = "G", default_value_t = 0.0)]
    pub g: f64,
    /// Also write the potential curve (z, x, V) as CSV.
    #[arg(long, value_name = "PATH")]
    pub emit_potential: Option<PathBuf>,
    #[command(flatten)]
    pub sweep: SweepArgs,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct PdmArgs {
    /// deformed-ho or semi-confined.
    #[arg(long)]
    pub model: String,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub x0: Option<f64>,
    #[command(flatten)]
    pub sweep: SweepArgs,
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Validation = 1,
    Numerical = 2,
    Violated = 3,
}

/// A failure with its exit status; the message is a single line.
#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl Failure {
    fn validation(message: impl Into<String>) -> Self {
        Self {
            status: Status::Validation,
            message: message.into(),
        }
    }
}

impl From<swkb_core::Error> for Failure {
    fn from(e: swkb_core::Error) -> Self {
        Self {
            status: if e.is_numerical() { Status::Numerical } else { Status::Validation },
            message: e.to_string(),
        }
    }
}

impl From<ReportError> for Failure {
    fn from(e: ReportError) -> Self {
        Self::validation(format!("report: {e}"))
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn resolve_tol(flag: Option<f64>) -> Run<f64> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| Failure::validation(format!("{TOL_ENV}={s:?} is not a number")))?,
            Err(_) => QUAD_TOL,
        },
    };
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(Failure::validation(format!("tolerance must be positive, got {tol}")))
    }
}

/// Acceptance threshold on `|I - nπ|` for a requested quadrature tolerance.
fn threshold(tol: f64, n: usize) -> f64 {
    (10.0 * tol).max(1e-8) * (1.0 + n as f64 * PI)
}

fn warn(message: &str) {
    eprintln!("swkb-lab: warning: {message}");
}

/// Runs `f` on `0..=n_max`, keeping the order whatever the scheduling.
fn sweep<T, F>(n_max: usize, parallel: bool, f: F) -> Run<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Run<T> + Sync + Send,
{
    if parallel {
        (0..=n_max).into_par_iter().map(f).collect()
    } else {
        (0..=n_max).map(f).collect()
    }
}

fn build_model(args: &FamilyArgs) -> Run<PotentialModel> {
    let family: FamilyId = args.family.parse()?;
    let mut params = Params::new();
    let named = [
        ("omega", args.omega),
        ("g", args.g),
        ("h", args.h),
        ("e2", args.e2),
        ("mu", args.mu),
        ("g_tilde", args.g_tilde),
        ("h_tilde", args.h_tilde),
    ];
    for (name, value) in named {
        if let Some(v) = value {
            params.set(name, v);
        }
    }
    for kv in &args.param {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Failure::validation(format!("expected NAME=VALUE, got {kv:?}")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| Failure::validation(format!("parameter {k}: {v:?} is not a number")))?;
        params.set(&k.trim().replace('-', "_"), v);
    }
    Ok(make_model(family, &params)?)
}

/// Levels `0..=requested`, cut at the last bound state.
fn level_cap(requested: usize, n_max: Option<usize>) -> usize {
    match n_max {
        Some(k) if k < requested => {
            warn(&format!("n-max {requested} exceeds the last bound state; stopping at {k}"));
            k
        }
        _ => requested,
    }
}

fn finish<T: Serialize>(rows: &[T], out: &OutputArgs, ok: bool) -> Run<Status> {
    emit_report(rows, out.format, out.output.as_deref())?;
    Ok(if ok { Status::Ok } else { Status::Violated })
}

fn run_check(args: &FamilyArgs) -> Run<Status> {
    let model = build_model(args)?;
    let tol = resolve_tol(args.sweep.tol)?;
    let top = level_cap(args.sweep.n_max, model.n_max());
    let rows = sweep(top, args.sweep.parallel, |n| Ok(swkb_check(&model, n, tol)?))?;
    let ok = rows.iter().all(|r| r.deviation.abs() <= threshold(tol, r.n));
    finish(&rows, &args.sweep.output, ok)
}

fn run_solve(args: &FamilyArgs) -> Run<Status> {
    let model = build_model(args)?;
    let tol = resolve_tol(args.sweep.tol)?;
    let top = level_cap(args.sweep.n_max, model.n_max());
    let rows: Vec<SwkbReport> = sweep(top, args.sweep.parallel, |n| {
        let report = swkb_check(&model, n, tol)?;
        Ok(report.with_solved(swkb_solve_energy(&model, n, tol)?))
    })?;
    let ok = rows.iter().all(|r| r.rel_err.is_some_and(|e| e <= (100.0 * tol).max(1e-8)));
    finish(&rows, &args.sweep.output, ok)
}

fn run_pct(args: &FamilyArgs) -> Run<Status> {
    let model = build_model(args)?;
    let tol = resolve_tol(args.sweep.tol)?;
    let spec = transform_for(model.family())?;
    let top = level_cap(args.sweep.n_max, model.n_max());
    match spec.realness {
        Realness::RealMap => {
            let rows = sweep(top, args.sweep.parallel, |n| {
                Ok(verify_swkb_transform(&spec, &model, n, threshold(tol, n))?)
            })?;
            let ok = rows.iter().all(|r| r.within_tol);
            finish(&rows, &args.sweep.output, ok)
        }
        Realness::ComplexMap => {
            let rows = sweep(top, args.sweep.parallel, |n| Ok(verify_energy_map(&spec, &model, n)?))?;
            let ok = rows.iter().all(|r| r.matches);
            finish(&rows, &args.sweep.output, ok)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NatanzonRow {
    pub n: usize,
    #[serde(rename = "E_exact")]
    pub energy_exact: f64,
    #[serde(rename = "E_swkb")]
    pub energy_swkb: f64,
    pub naive_integral: f64,
    pub naive_deviation: f64,
}

/// Relative agreement required between oracle and SWKB energies.
const NATANZON_REL: f64 = 1e-6;

fn run_natanzon(args: &NatanzonArgs) -> Run<Status> {
    let class: NatanzonClass = args.class.parse()?;
    let nat = NatanzonParams::new(class, args.a, args.b, args.c, args.d, args.f, args.g)?;
    let tol = resolve_tol(args.sweep.tol)?;
    // levels beyond the last bound state are dropped
    let mut top = args.sweep.n_max;
    for n in 0..=args.sweep.n_max {
        match natanzon_exact_energy(&nat, n) {
            Ok(_) => {}
            Err(swkb_core::Error::NoBoundState { .. }) if n > 0 => {
                top = n - 1;
                warn(&format!("n-max {} exceeds the last bound state; stopping at {top}", args.sweep.n_max));
                break;
            }
            Err(e) => return Err(e.into()),
        }
    }
    let rows = sweep(top, args.sweep.parallel, |n| {
        let exact = natanzon_exact_energy(&nat, n)?;
        let solved = natanzon_solve_swkb_energy(&nat, n, tol)?;
        let naive = natanzon_naive_swkb(&nat, n, tol)?;
        Ok(NatanzonRow {
            n,
            energy_exact: exact,
            energy_swkb: solved,
            naive_integral: naive,
            naive_deviation: naive - n as f64 * PI,
        })
    })?;
    if let Some(path) = &args.emit_potential {
        write_potential_curve(&nat, path)?;
    }
    let ok = rows
        .iter()
        .all(|r| relative_error(r.energy_swkb, r.energy_exact) <= NATANZON_REL.max(tol));
    finish(&rows, &args.sweep.output, ok)
}

/// `z,x,V` at 6 significant digits on a fixed grid.
fn write_potential_curve(nat: &NatanzonParams, path: &std::path::Path) -> Run<()> {
    let (lo, hi) = match nat.class {
        NatanzonClass::Laguerre => (0.05, 8.0),
        NatanzonClass::Jacobi => (0.01, FRAC_PI_2 - 0.01),
    };
    let grid: Vec<f64> = (0..400).map(|i| lo + (hi - lo) * i as f64 / 399.0).collect();
    let curve = natanzon_potential_curve(nat, &grid)?;
    let io = |e: std::io::Error| Failure::validation(format!("emit-potential {}: {e}", path.display()));
    let mut w = BufWriter::new(File::create(path).map_err(io)?);
    writeln!(w, "z,x,V").map_err(io)?;
    for p in curve {
        writeln!(w, "{:.5e},{:.5e},{:.5e}", p.z, p.x, p.v).map_err(io)?;
    }
    w.flush().map_err(io)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PdmRow {
    pub n: usize,
    #[serde(rename = "E_exact")]
    pub energy_exact: f64,
    pub deformed_integral: f64,
    pub ordinary_integral: f64,
    pub deviation_ordinary: f64,
}

fn run_pdm(args: &PdmArgs) -> Run<Status> {
    let kind: DeformedKind = args.model.parse()?;
    let mut params = Params::new();
    for (name, value) in [("omega", args.omega), ("alpha", args.alpha), ("x0", args.x0)] {
        if let Some(v) = value {
            params.set(name, v);
        }
    }
    let model = make_deformed(kind, &params)?;
    let tol = resolve_tol(args.sweep.tol)?;
    let rows = sweep(args.sweep.n_max, args.sweep.parallel, |n| {
        let deformed = deformed_swkb_integral(&model, n, tol)?;
        let ordinary = ordinary_swkb_integral(&model, n, tol)?;
        Ok(PdmRow {
            n,
            energy_exact: model.exact_energy(n),
            deformed_integral: deformed,
            ordinary_integral: ordinary,
            deviation_ordinary: ordinary - n as f64 * PI,
        })
    })?;
    let ok = rows
        .iter()
        .all(|r| (r.deformed_integral - r.n as f64 * PI).abs() <= threshold(tol, r.n));
    finish(&rows, &args.sweep.output, ok)
}

pub fn run(cli: &Cli) -> Run<Status> {
    match &cli.command {
        Command::Catalog(out) => finish(&catalog_listing(), out, true),
        Command::Check(a) => run_check(a),
        Command::Solve(a) => run_solve(a),
        Command::Pct(a) => run_pct(a),
        Command::Natanzon(a) => run_natanzon(a),
        Command::Pdm(a) => run_pdm(a),
    }
}

/// Parses `args` and runs; returns the exit status. Usage errors map to 1.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { Status::Validation as i32 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(status) => status as i32,
        Err(f) => {
            let kind = match f.status {
                Status::Numerical => "numerical",
                _ => "validation",
            };
            eprintln!("swkb-lab: error[{kind}]: {}", f.message.replace('\n', " "));
            f.status as i32
        }
    }
}
