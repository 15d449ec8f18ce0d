//! `qgeom` — sweep the closed-form geometry of the uniformly coupled
//! spin-1/2 ensemble and write the results to CSV, JSON, or SVG.
//!
//! Every subcommand maps 1:1 onto a library operation; this binary only
//! parses flags, assembles a sweep configuration, and writes files. The
//! range flags (`--theta`, `--chi`, `--E`) accept either a single value or
//! a `start:stop` range; ranged parameters become sweep axes with `--grid`
//! points each, and when two parameters are ranged the later one in the
//! fixed order θ, χ, E varies fastest (row-major tables).
//!
//! Exit codes: 0 on success, 2 for domain errors (bad parameters, empty or
//! unreachable grids), 1 for I/O errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use qgeom_core::sweep::{
    reproduce_figure, run_sweep, emit, FigureId, Format, GridAxis, Param, Pinned, Quantity,
    SweepConfig, DEFAULT_GRID,
};
use qgeom_core::{Error, Result};

#[derive(Parser)]
#[command(name = "qgeom", version, about = "Geometry, phases, and time-optimal dynamics of the uniformly coupled spin-1/2 ensemble", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Metric components (g_θθ, g_φφ, g_χχ, g_φχ) of the parameter manifold
    Metric(SweepArgs),
    /// Scalar curvature of the reduced (θ, χ) manifold
    Curvature(SweepArgs),
    /// Total phase accumulated by the evolved state
    TotalPhase(SweepArgs),
    /// Geometric (total minus dynamical) phase
    GeometricPhase(SweepArgs),
    /// Cyclic Aharonov-Anandan phase over one period
    AaPhase(SweepArgs),
    /// Topological part of the cyclic phase
    TopologicalPhase(SweepArgs),
    /// Evolution speed on the projective manifold
    Speed(SweepArgs),
    /// Fubini-Study distance covered by the evolution
    Distance(SweepArgs),
    /// Speed/distance extremals and the minimal evolution time
    Brachistochrone(SweepArgs),
    /// Two-spin geometric measure of entanglement
    Entanglement(SweepArgs),
    /// Curvature in entanglement coordinates (E, χ)
    EntCurvature(SweepArgs),
    /// Geometric phase in entanglement coordinates
    EntPhase(SweepArgs),
    /// Cyclic phase in entanglement coordinates
    EntAaPhase(SweepArgs),
    /// Evolution speed in entanglement coordinates
    EntSpeed(SweepArgs),
    /// Fubini-Study distance in entanglement coordinates
    EntDistance(SweepArgs),
    /// Minimal evolution time in entanglement coordinates
    EntTime(SweepArgs),
    /// Write a reference figure dataset (CSV + SVG) into a directory
    Figure(FigureArgs),
}

impl Command {
    fn quantity(&self) -> Option<(Quantity, &SweepArgs)> {
        match self {
            Command::Metric(a) => Some((Quantity::Metric, a)),
            Command::Curvature(a) => Some((Quantity::Curvature, a)),
            Command::TotalPhase(a) => Some((Quantity::TotalPhase, a)),
            Command::GeometricPhase(a) => Some((Quantity::GeometricPhase, a)),
            Command::AaPhase(a) => Some((Quantity::AaPhase, a)),
            Command::TopologicalPhase(a) => Some((Quantity::TopologicalPhase, a)),
            Command::Speed(a) => Some((Quantity::Speed, a)),
            Command::Distance(a) => Some((Quantity::Distance, a)),
            Command::Brachistochrone(a) => Some((Quantity::Brachistochrone, a)),
            Command::Entanglement(a) => Some((Quantity::Entanglement, a)),
            Command::EntCurvature(a) => Some((Quantity::EntCurvature, a)),
            Command::EntPhase(a) => Some((Quantity::EntPhase, a)),
            Command::EntAaPhase(a) => Some((Quantity::EntAaPhase, a)),
            Command::EntSpeed(a) => Some((Quantity::EntSpeed, a)),
            Command::EntDistance(a) => Some((Quantity::EntDistance, a)),
            Command::EntTime(a) => Some((Quantity::EntTime, a)),
            Command::Figure(_) => None,
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    /// Particle count
    #[arg(long)]
    n: Option<u32>,

    /// Interaction strength J
    #[arg(long = "J", allow_hyphen_values = true)]
    j: Option<f64>,

    /// Polar angle theta: a value or a start:stop range
    #[arg(long)]
    theta: Option<String>,

    /// Evolution parameter chi = J*t: a value or a start:stop range
    #[arg(long, allow_hyphen_values = true)]
    chi: Option<String>,

    /// Azimuthal angle phi (recorded in the output; no quantity depends on it)
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,

    /// Entanglement level E: a value or a start:stop range
    #[arg(long = "E")]
    e: Option<String>,

    /// Number of grid points per ranged parameter
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: usize,

    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    /// Output file path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct FigureArgs {
    /// Figure id: fig2b, fig3, fig4a, fig4b, fig5, fig6a-c, or fig7a-c
    id: String,

    /// Directory the dataset files are written into
    #[arg(long = "out-dir")]
    out_dir: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Svg,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Svg => Format::Svg,
        }
    }
}

/// A scalar flag value or a `start:stop` range.
enum Spec {
    Value(f64),
    Range(f64, f64),
}

fn parse_spec(flag: &str, text: &str) -> Result<Spec> {
    let bad = || Error::InvalidSweep {
        reason: format!("--{flag} expects a number or start:stop, got '{text}'"),
    };
    match text.split_once(':') {
        None => Ok(Spec::Value(text.trim().parse().map_err(|_| bad())?)),
        Some((lo, hi)) => Ok(Spec::Range(
            lo.trim().parse().map_err(|_| bad())?,
            hi.trim().parse().map_err(|_| bad())?,
        )),
    }
}

fn build_config(quantity: Quantity, args: &SweepArgs) -> Result<SweepConfig> {
    let mut pinned = Pinned {
        n: args.n,
        j: args.j,
        phi: args.phi,
        ..Pinned::default()
    };
    let mut grids = Vec::new();
    // Fixed axis order theta, chi, E: the last ranged flag varies fastest.
    let specs = [
        (Param::Theta, "theta", &args.theta),
        (Param::Chi, "chi", &args.chi),
        (Param::Ent, "E", &args.e),
    ];
    for (param, flag, text) in specs {
        let Some(text) = text else { continue };
        match parse_spec(flag, text)? {
            Spec::Value(v) => match param {
                Param::Theta => pinned.theta = Some(v),
                Param::Chi => pinned.chi = Some(v),
                Param::Ent => pinned.e = Some(v),
                Param::N => unreachable!(),
            },
            Spec::Range(start, stop) => grids.push(GridAxis {
                param,
                start,
                stop,
                count: args.grid,
            }),
        }
    }
    Ok(SweepConfig { quantity, pinned, grids })
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Figure(args) => {
            let id: FigureId = args.id.parse()?;
            for path in reproduce_figure(id, &args.out_dir)? {
                println!("wrote {}", path.display());
            }
        }
        other => {
            let (quantity, args) = other.quantity().expect("non-figure command");
            let table = run_sweep(&build_config(quantity, args)?)?;
            emit(&table, args.format.into(), &args.out)?;
            println!("wrote {} ({} rows)", args.out.display(), table.rows.len());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(if err.is_domain() { 2 } else { 1 })
        }
    }
}
