//! Command-line front end. Every subcommand computes its full output before
//! touching the filesystem, so a failed run leaves no partial files.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::grid::{Coords1D, Hierarchy, StretchSpec};
use crate::layout::{BlockLayout, Scheme};
use crate::mgcycle::{random_rhs, CycleConfig, CycleReport, Multigrid};
use crate::smoothers::SmootherKind;
use crate::spectral::{TwoGridConfig, TwoGridOperator};
use crate::stencil::Field;
use crate::transfer::TransferKind;

#[derive(Debug, Parser)]
#[command(
    name = "tweedwire",
    version,
    about = "Multigrid with branched-line smoothers on stretched grids"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a random-RHS problem and record the defect history.
    Solve(SolveArgs),
    /// Estimate the two-grid spectral radius.
    Spectral(SpectralArgs),
    /// Dump |defect| on the finest grid after a number of cycles.
    DefectField(DefectFieldArgs),
    /// Dump 1D grid coordinates.
    Grid(GridArgs),
    /// Dump block membership of a smoother layout.
    Layout(LayoutArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StretchArg {
    Uniform,
    Wall,
    Centre,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Checkerboard,
    #[value(name = "zebra_x")]
    ZebraX,
    #[value(name = "zebra_y")]
    ZebraY,
    Tweed,
    Wireframe,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Checkerboard => Scheme::Checkerboard,
            SchemeArg::ZebraX => Scheme::ZebraX,
            SchemeArg::ZebraY => Scheme::ZebraY,
            SchemeArg::Tweed => Scheme::Tweed,
            SchemeArg::Wireframe => Scheme::Wireframe,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct StretchArgs {
    #[arg(long, value_enum, default_value = "uniform")]
    pub stretch: StretchArg,
    /// Stretching parameter, required for wall and centre.
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub length: f64,
}

impl StretchArgs {
    pub fn spec(&self) -> Result<StretchSpec, CliError> {
        match (self.stretch, self.c) {
            (StretchArg::Uniform, None) => Ok(StretchSpec::Uniform),
            (StretchArg::Uniform, Some(_)) => Err(CliError::Usage(
                "--c only applies to wall and centre stretching".into(),
            )),
            (StretchArg::Wall, Some(c)) => Ok(StretchSpec::Wall { c }),
            (StretchArg::Centre, Some(c)) => Ok(StretchSpec::Centre { c }),
            (_, None) => Err(CliError::Usage(
                "--c is required with wall and centre stretching".into(),
            )),
        }
    }

    fn build(&self, n: usize) -> Result<Coords1D, CliError> {
        Ok(self.spec()?.build(n, self.length)?)
    }
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    #[arg(long, default_value_t = 128)]
    pub nx: usize,
    #[arg(long, default_value_t = 128)]
    pub ny: usize,
    #[command(flatten)]
    pub stretch: StretchArgs,
    #[arg(long, default_value = "checkerboard")]
    pub smoother: SmootherKind,
    #[arg(long = "restrict", default_value = "full")]
    pub restriction: TransferKind,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, default_value_t = 1)]
    pub nu1: usize,
    #[arg(long, default_value_t = 1)]
    pub nu2: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 50)]
    pub max_cycles: usize,
    /// Per-cycle CSV trace.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// JSON report; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SpectralArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long)]
    pub nu: usize,
    #[arg(long, default_value_t = 3000)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 30)]
    pub tail_window: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct DefectFieldArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, default_value_t = 2)]
    pub nu1: usize,
    #[arg(long, default_value_t = 2)]
    pub nu2: usize,
    #[arg(long, default_value_t = 3)]
    pub cycles: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub stretch: StretchArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct LayoutArgs {
    #[arg(long)]
    pub nx: usize,
    #[arg(long)]
    pub ny: usize,
    #[arg(long, value_enum)]
    pub scheme: SchemeArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Solver(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Solver(
                Error::InvalidGrid(_)
                | Error::CannotCoarsen(_)
                | Error::InvalidLayout(_)
                | Error::InvalidConfig(_),
            ) => 2,
            CliError::Solver(_) | CliError::Io { .. } => 1,
        }
    }
}

fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn build_multigrid(p: &ProblemArgs) -> Result<Multigrid, CliError> {
    let x = p.stretch.build(p.nx)?;
    let y = p.stretch.build(p.ny)?;
    Ok(Multigrid::new(Hierarchy::build(x, y)?))
}

#[derive(Serialize)]
struct ConfigEcho {
    nx: usize,
    ny: usize,
    stretch: &'static str,
    c: Option<f64>,
    length: f64,
    smoother: SmootherKind,
    restriction: TransferKind,
    nu1: usize,
    nu2: usize,
    tol: f64,
    max_cycles: usize,
    seed: u64,
}

#[derive(Serialize)]
struct SolveReport {
    config: ConfigEcho,
    converged: bool,
    cycles: usize,
    final_rel_defect: f64,
    per_cycle_ratios: Vec<f64>,
}

/// Trace CSV: one row per cycle, row 0 being the initial state.
pub fn trace_csv(report: &CycleReport) -> String {
    let mut s = String::from("cycle,relaxations,defect_max,rel_defect\n");
    for (k, (d, r)) in report
        .defect_max
        .iter()
        .zip(report.rel_defects())
        .enumerate()
    {
        writeln!(
            s,
            "{k},{},{},{}",
            report.relaxations[k],
            fmt_f(*d),
            fmt_f(r)
        )
        .unwrap();
    }
    s
}

fn stretch_name(s: StretchArg) -> &'static str {
    match s {
        StretchArg::Uniform => "uniform",
        StretchArg::Wall => "wall",
        StretchArg::Centre => "centre",
    }
}

pub fn cmd_solve(a: &SolveArgs) -> Result<(), CliError> {
    let p = &a.problem;
    let cfg = CycleConfig {
        smoother: p.smoother,
        restriction: p.restriction,
        nu1: a.nu1,
        nu2: a.nu2,
        tol: a.tol,
        max_cycles: a.max_cycles,
        seed: p.seed,
    };
    cfg.validate()?;
    let mut mg = build_multigrid(p)?;
    let f = random_rhs(p.nx, p.ny, p.seed);
    let (_, report) = mg.solve(&cfg, &f, &Field::zeros(p.nx, p.ny))?;
    let json = to_json(&SolveReport {
        config: ConfigEcho {
            nx: p.nx,
            ny: p.ny,
            stretch: stretch_name(p.stretch.stretch),
            c: p.stretch.c,
            length: p.stretch.length,
            smoother: cfg.smoother,
            restriction: cfg.restriction,
            nu1: cfg.nu1,
            nu2: cfg.nu2,
            tol: cfg.tol,
            max_cycles: cfg.max_cycles,
            seed: cfg.seed,
        },
        converged: report.converged,
        cycles: report.cycles,
        final_rel_defect: report.final_rel_defect,
        per_cycle_ratios: report.per_cycle_ratios(),
    });
    if let Some(t) = &a.trace {
        write_output(Some(t), &trace_csv(&report))?;
    }
    write_output(a.out.as_deref(), &json)
}

pub fn cmd_spectral(a: &SpectralArgs) -> Result<(), CliError> {
    let p = &a.problem;
    let mut cfg = TwoGridConfig::new(p.smoother, p.restriction, a.nu);
    cfg.max_iters = a.max_iters;
    cfg.rel_tol = a.rel_tol;
    cfg.tail_window = a.tail_window;
    cfg.seed = p.seed;
    cfg.validate()?;
    let x = p.stretch.build(p.nx)?;
    let y = p.stretch.build(p.ny)?;
    let est = TwoGridOperator::new(x, y, cfg)?.spectral_radius()?;
    write_output(a.out.as_deref(), &to_json(&est))
}

/// `|f - L u|` over the full grid, one row per `j`.
pub fn defect_csv(d: &Field) -> String {
    let mut s = String::new();
    for j in 0..=d.ny() {
        let row: Vec<String> = (0..=d.nx()).map(|i| fmt_f(d[(i, j)].abs())).collect();
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

pub fn cmd_defect_field(a: &DefectFieldArgs) -> Result<(), CliError> {
    let p = &a.problem;
    let cfg = CycleConfig {
        smoother: p.smoother,
        restriction: p.restriction,
        nu1: a.nu1,
        nu2: a.nu2,
        seed: p.seed,
        ..Default::default()
    };
    cfg.validate()?;
    let mut mg = build_multigrid(p)?;
    let f = random_rhs(p.nx, p.ny, p.seed);
    let mut u = Field::zeros(p.nx, p.ny);
    mg.run_cycles(&cfg, &mut u, &f, a.cycles)?;
    let d = mg.hierarchy().finest().stencil.defect(&u, &f)?;
    write_output(a.out.as_deref(), &defect_csv(&d))
}

pub fn grid_csv(x: &Coords1D) -> String {
    let mut s = String::from("index,coord\n");
    for (k, v) in x.values().iter().enumerate() {
        writeln!(s, "{k},{}", fmt_f(*v)).unwrap();
    }
    s
}

pub fn cmd_grid(a: &GridArgs) -> Result<(), CliError> {
    let x = a.stretch.build(a.n)?;
    write_output(a.out.as_deref(), &grid_csv(&x))
}

pub fn layout_csv(layout: &BlockLayout) -> String {
    let mut s = String::from("i,j,block_id,colour,scheme\n");
    for (id, b) in layout.blocks.iter().enumerate() {
        for node in b.members() {
            writeln!(
                s,
                "{},{},{id},{},{}",
                node.i,
                node.j,
                b.colour.as_str(),
                layout.scheme.as_str()
            )
            .unwrap();
        }
    }
    s
}

pub fn cmd_layout(a: &LayoutArgs) -> Result<(), CliError> {
    let layout = BlockLayout::build(a.scheme.into(), a.nx, a.ny)?;
    write_output(a.out.as_deref(), &layout_csv(&layout))
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Spectral(a) => cmd_spectral(a),
        Command::DefectField(a) => cmd_defect_field(a),
        Command::Grid(a) => cmd_grid(a),
        Command::Layout(a) => cmd_layout(a),
    }
}

/// Parses the process arguments and runs. Usage errors exit with 2.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
