//! Parameter sweeps, figure presets, and file emission.
//!
//! This is plumbing, not physics: every quantity evaluated here maps 1:1
//! onto a library operation from the sibling modules, and the only logic is
//! grid handling, provenance bookkeeping, and deterministic serialization.
//! A sweep is a rectangular grid over one or two swept parameters with all
//! other parameters pinned; its result is a [`Table`] whose rows carry the
//! swept values, the pinned values (full provenance), and the computed
//! outputs, in a deterministic row-major order. Tables serialize to CSV
//! (17-significant-digit scientific notation, UNIX newlines — byte-stable
//! across runs), JSON (`{columns, rows, meta}`), and a simple SVG polyline
//! plot.
//!
//! Figure presets bundle the parameter families of the reference plots:
//! curvature/cyclic-phase/speed/distance against θ for small particle
//! numbers, entanglement against χ for several θ, and the
//! entanglement-coordinate quantities against E at several χ. Sweeps over E
//! stop at `E_reach(χ) − 1e-6`: the chart boundary is a metric singularity,
//! not physics.

use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use crate::dynamics::{brachistochrone_report, fs_distance, speed};
use crate::entangle::{
    aa_phase_ent, curvature_ent, distance_ent, entanglement, geometric_phase_ent, optimal_time_ent,
    reachable_max, speed_ent, EntCoord,
};
use crate::geometry::{curvature_closed, metric_full};
use crate::numerics::linspace;
use crate::phases::{aa_phase_closed, geometric_phase, topological_phase, total_phase_closed};
use crate::statevector::N_MAX;
use crate::{Error, Result};

/// Default point count for ranged parameters.
pub const DEFAULT_GRID: usize = 101;

/// Inset from the reachability boundary used by figure presets over E.
pub const REACH_INSET: f64 = 1e-6;

/// Everything the front end can sweep or evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// Full metric components `(g_θθ, g_φφ, g_χχ, g_φχ)` of the n-spin
    /// state space.
    Metric,
    /// Scalar curvature of the reduced `(θ, χ)` manifold.
    Curvature,
    /// Total phase of the evolved state.
    TotalPhase,
    /// Geometric (total minus dynamical) phase.
    GeometricPhase,
    /// Cyclic Aharonov–Anandan phase.
    AaPhase,
    /// Topological part of the cyclic phase.
    TopologicalPhase,
    /// Evolution speed.
    Speed,
    /// Fubini–Study distance covered.
    Distance,
    /// Full speed/distance/minimal-time report.
    Brachistochrone,
    /// Two-spin geometric measure of entanglement.
    Entanglement,
    /// Curvature in entanglement coordinates.
    EntCurvature,
    /// Geometric phase in entanglement coordinates.
    EntPhase,
    /// Cyclic phase in entanglement coordinates.
    EntAaPhase,
    /// Speed in entanglement coordinates.
    EntSpeed,
    /// FS-distance in entanglement coordinates.
    EntDistance,
    /// Minimal evolution time in entanglement coordinates.
    EntTime,
}

impl Quantity {
    /// Every quantity, in the canonical front-end order.
    pub const ALL: [Quantity; 16] = [
        Quantity::Metric,
        Quantity::Curvature,
        Quantity::TotalPhase,
        Quantity::GeometricPhase,
        Quantity::AaPhase,
        Quantity::TopologicalPhase,
        Quantity::Speed,
        Quantity::Distance,
        Quantity::Brachistochrone,
        Quantity::Entanglement,
        Quantity::EntCurvature,
        Quantity::EntPhase,
        Quantity::EntAaPhase,
        Quantity::EntSpeed,
        Quantity::EntDistance,
        Quantity::EntTime,
    ];

    /// Kebab-case command name.
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Metric => "metric",
            Quantity::Curvature => "curvature",
            Quantity::TotalPhase => "total-phase",
            Quantity::GeometricPhase => "geometric-phase",
            Quantity::AaPhase => "aa-phase",
            Quantity::TopologicalPhase => "topological-phase",
            Quantity::Speed => "speed",
            Quantity::Distance => "distance",
            Quantity::Brachistochrone => "brachistochrone",
            Quantity::Entanglement => "entanglement",
            Quantity::EntCurvature => "ent-curvature",
            Quantity::EntPhase => "ent-phase",
            Quantity::EntAaPhase => "ent-aa-phase",
            Quantity::EntSpeed => "ent-speed",
            Quantity::EntDistance => "ent-distance",
            Quantity::EntTime => "ent-time",
        }
    }

    /// Names of the computed output columns.
    pub fn output_columns(self) -> &'static [&'static str] {
        match self {
            Quantity::Metric => &["g_theta_theta", "g_phi_phi", "g_chi_chi", "g_phi_chi"],
            Quantity::Curvature | Quantity::EntCurvature => &["curvature"],
            Quantity::TotalPhase => &["total_phase"],
            Quantity::GeometricPhase | Quantity::EntPhase => &["geometric_phase"],
            Quantity::AaPhase | Quantity::EntAaPhase => &["aa_phase"],
            Quantity::TopologicalPhase => &["topological_phase"],
            Quantity::Speed | Quantity::EntSpeed => &["speed"],
            Quantity::Distance | Quantity::EntDistance => &["fs_distance"],
            Quantity::Brachistochrone => &[
                "speed",
                "speed_max",
                "theta_max",
                "fs_distance",
                "fs_distance_min",
                "time_min",
                "chi_min",
            ],
            Quantity::Entanglement => &["entanglement"],
            Quantity::EntTime => &["optimal_time"],
        }
    }
}

impl std::str::FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == s)
            .ok_or_else(|| Error::InvalidSweep { reason: format!("unknown quantity '{s}'") })
    }
}

impl std::fmt::Display for Quantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A sweepable parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    /// Particle count (integer-valued grid).
    N,
    /// Polar angle θ.
    Theta,
    /// Evolution parameter χ.
    Chi,
    /// Entanglement level E.
    Ent,
}

impl Param {
    /// Column name of the parameter.
    pub fn name(self) -> &'static str {
        match self {
            Param::N => "n",
            Param::Theta => "theta",
            Param::Chi => "chi",
            Param::Ent => "E",
        }
    }
}

/// One swept axis: `count` evenly spaced values on `[start, stop]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    pub param: Param,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridAxis {
    /// The grid values of this axis.
    pub fn values(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.count)
    }
}

/// Pinned (non-swept) parameter values.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Pinned {
    pub n: Option<u32>,
    pub j: Option<f64>,
    pub theta: Option<f64>,
    pub phi: Option<f64>,
    pub chi: Option<f64>,
    pub e: Option<f64>,
}

/// A complete sweep request: quantity, pinned values, and one or two grid
/// axes (zero axes are admitted only for the one scalar quantity,
/// `topological-phase`, which depends on nothing sweepable but n).
///
/// The azimuthal angle φ is recorded as provenance when pinned but enters
/// no listed quantity — every closed form here is φ-independent.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub quantity: Quantity,
    pub pinned: Pinned,
    pub grids: Vec<GridAxis>,
}

/// Grid description carried in table metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridMeta {
    pub param: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

/// Table metadata: what was computed, what was pinned, over which grids.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Meta {
    pub quantity: String,
    pub pinned: BTreeMap<String, f64>,
    pub grids: Vec<GridMeta>,
    pub version: String,
}

/// A computed sweep: column names, row-major numeric rows, and metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub meta: Meta,
}

/// Output file formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl Format {
    /// File extension (also the command-line name).
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Svg => "svg",
        }
    }
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            other => {
                Err(Error::InvalidSweep { reason: format!("unknown format '{other}'") })
            }
        }
    }
}

/// Which parameters a quantity consumes.
#[derive(Clone, Copy)]
struct Needs {
    n: bool,
    theta: bool,
    chi: bool,
    e: bool,
    j: bool,
}

fn needs(q: Quantity) -> Needs {
    let no = Needs { n: false, theta: false, chi: false, e: false, j: false };
    match q {
        Quantity::Metric | Quantity::Curvature | Quantity::AaPhase => {
            Needs { n: true, theta: true, ..no }
        }
        Quantity::TotalPhase | Quantity::GeometricPhase | Quantity::Distance => {
            Needs { n: true, theta: true, chi: true, ..no }
        }
        Quantity::TopologicalPhase => Needs { n: true, ..no },
        Quantity::Speed => Needs { n: true, theta: true, j: true, ..no },
        Quantity::Brachistochrone => Needs { n: true, theta: true, chi: true, j: true, ..no },
        Quantity::Entanglement => Needs { theta: true, chi: true, ..no },
        Quantity::EntCurvature | Quantity::EntPhase | Quantity::EntAaPhase
        | Quantity::EntDistance => Needs { chi: true, e: true, ..no },
        Quantity::EntSpeed | Quantity::EntTime => Needs { chi: true, e: true, j: true, ..no },
    }
}

fn param_needed(q: Quantity, p: Param) -> bool {
    let n = needs(q);
    match p {
        Param::N => n.n,
        Param::Theta => n.theta,
        Param::Chi => n.chi,
        Param::Ent => n.e,
    }
}

/// One fully resolved evaluation point. φ is absent: it is recorded as
/// provenance but enters no quantity.
#[derive(Clone, Copy)]
struct Point {
    n: u32,
    j: f64,
    theta: f64,
    chi: f64,
    e: f64,
}

fn evaluate(q: Quantity, p: Point) -> Result<Vec<f64>> {
    Ok(match q {
        Quantity::Metric => {
            let m = metric_full(p.n, p.theta)?;
            vec![m.g_tt, m.g_pp, m.g_cc, m.g_pc]
        }
        Quantity::Curvature => vec![curvature_closed(p.n, p.theta)?],
        Quantity::TotalPhase => vec![total_phase_closed(p.n, p.theta, p.chi)?],
        Quantity::GeometricPhase => vec![geometric_phase(p.n, p.theta, p.chi)?],
        Quantity::AaPhase => vec![aa_phase_closed(p.n, p.theta)],
        Quantity::TopologicalPhase => vec![topological_phase(p.n)],
        Quantity::Speed => vec![speed(p.n, p.theta, p.j)],
        Quantity::Distance => vec![fs_distance(p.n, p.theta, p.chi)],
        Quantity::Brachistochrone => {
            let r = brachistochrone_report(p.n, p.theta, p.j, p.chi / p.j)?;
            vec![r.v, r.v_max, r.theta_max, r.s, r.s_min, r.t_min, r.chi_min]
        }
        Quantity::Entanglement => vec![entanglement(p.theta, p.chi)],
        Quantity::EntCurvature => vec![curvature_ent(EntCoord::new(p.e, p.chi)?)?],
        Quantity::EntPhase => vec![geometric_phase_ent(EntCoord::new(p.e, p.chi)?)?],
        Quantity::EntAaPhase => vec![aa_phase_ent(EntCoord::new(p.e, p.chi)?)?],
        Quantity::EntSpeed => vec![speed_ent(EntCoord::new(p.e, p.chi)?, p.j)],
        Quantity::EntDistance => vec![distance_ent(EntCoord::new(p.e, p.chi)?)],
        Quantity::EntTime => vec![optimal_time_ent(EntCoord::new(p.e, p.chi)?, p.j)],
    })
}

fn invalid(reason: impl Into<String>) -> Error {
    Error::InvalidSweep { reason: reason.into() }
}

fn validate(config: &SweepConfig) -> Result<()> {
    let q = config.quantity;
    let axes = &config.grids;
    match axes.len() {
        0 if q == Quantity::TopologicalPhase => {}
        0 => return Err(invalid("at least one swept parameter is required")),
        1 | 2 => {}
        k => return Err(invalid(format!("{k} swept parameters (at most two supported)"))),
    }
    for (i, axis) in axes.iter().enumerate() {
        if axis.count < 2 {
            return Err(invalid(format!("{} grid needs at least 2 points", axis.param.name())));
        }
        if !axis.start.is_finite() || !axis.stop.is_finite() || axis.start > axis.stop {
            return Err(invalid(format!("{} grid range is malformed", axis.param.name())));
        }
        if axes[..i].iter().any(|other| other.param == axis.param) {
            return Err(invalid(format!("{} is swept twice", axis.param.name())));
        }
        if !param_needed(q, axis.param) {
            return Err(invalid(format!("{} does not enter {}", axis.param.name(), q.name())));
        }
        let pinned_too = match axis.param {
            Param::N => config.pinned.n.is_some(),
            Param::Theta => config.pinned.theta.is_some(),
            Param::Chi => config.pinned.chi.is_some(),
            Param::Ent => config.pinned.e.is_some(),
        };
        if pinned_too {
            return Err(invalid(format!("{} is both pinned and swept", axis.param.name())));
        }
        match axis.param {
            Param::N => {
                for v in axis.values() {
                    if (v - v.round()).abs() > 1e-9 || v.round() < 1.0
                        || v.round() > N_MAX as f64
                    {
                        return Err(invalid(format!("n grid value {v} is not a valid count")));
                    }
                }
            }
            Param::Theta => {
                if axis.start < 0.0 || axis.stop > std::f64::consts::PI {
                    return Err(invalid("theta grid leaves [0, pi]"));
                }
            }
            Param::Ent => {
                if axis.start < 0.0 || axis.stop > 0.5 {
                    return Err(invalid("E grid leaves [0, 1/2]"));
                }
            }
            Param::Chi => {}
        }
    }
    let have = |p: Param| {
        axes.iter().any(|a| a.param == p)
            || match p {
                Param::N => config.pinned.n.is_some(),
                Param::Theta => config.pinned.theta.is_some(),
                Param::Chi => config.pinned.chi.is_some(),
                Param::Ent => config.pinned.e.is_some(),
            }
    };
    let need = needs(q);
    if need.n && !have(Param::N) {
        return Err(invalid(format!("{} requires n", q.name())));
    }
    if need.theta && !have(Param::Theta) {
        return Err(invalid(format!("{} requires theta", q.name())));
    }
    if need.chi && !have(Param::Chi) {
        return Err(invalid(format!("{} requires chi", q.name())));
    }
    if need.e && !have(Param::Ent) {
        return Err(invalid(format!("{} requires E", q.name())));
    }
    if let Some(theta) = config.pinned.theta {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(invalid("pinned theta leaves [0, pi]"));
        }
    }
    if let Some(e) = config.pinned.e {
        if !(0.0..=0.5).contains(&e) {
            return Err(invalid("pinned E leaves [0, 1/2]"));
        }
    }
    if let Some(n) = config.pinned.n {
        if !(1..=N_MAX).contains(&n) {
            return Err(invalid(format!("pinned n = {n} outside [1, {N_MAX}]")));
        }
    }
    let j = config.pinned.j.unwrap_or(1.0);
    if need.j && !(j.is_finite() && j != 0.0) {
        return Err(invalid("J must be finite and non-zero"));
    }
    if matches!(q, Quantity::Brachistochrone | Quantity::EntTime) && j <= 0.0 {
        return Err(invalid("minimal-time quantities require J > 0"));
    }
    Ok(())
}

/// Provenance entries: pinned values (plus the default `J = 1` when the
/// quantity uses J), in the canonical column order `n, J, theta, phi, chi,
/// E`, excluding swept parameters.
fn provenance(config: &SweepConfig) -> Vec<(&'static str, f64)> {
    let swept = |p: Param| config.grids.iter().any(|a| a.param == p);
    let mut out = Vec::new();
    if let Some(n) = config.pinned.n {
        if !swept(Param::N) {
            out.push(("n", n as f64));
        }
    }
    let j = config.pinned.j.or(needs(config.quantity).j.then_some(1.0));
    if let Some(j) = j {
        out.push(("J", j));
    }
    if let Some(theta) = config.pinned.theta {
        if !swept(Param::Theta) {
            out.push(("theta", theta));
        }
    }
    if let Some(phi) = config.pinned.phi {
        out.push(("phi", phi));
    }
    if let Some(chi) = config.pinned.chi {
        if !swept(Param::Chi) {
            out.push(("chi", chi));
        }
    }
    if let Some(e) = config.pinned.e {
        if !swept(Param::Ent) {
            out.push(("E", e));
        }
    }
    out
}

/// Runs a sweep: validates the configuration, evaluates the quantity over
/// the row-major grid (in parallel), and assembles the table with full
/// provenance columns. Evaluation errors at any grid point abort the sweep.
pub fn run_sweep(config: &SweepConfig) -> Result<Table> {
    validate(config)?;
    let prov = provenance(config);
    let mut columns: Vec<String> =
        config.grids.iter().map(|a| a.param.name().to_string()).collect();
    columns.extend(prov.iter().map(|(name, _)| name.to_string()));
    columns.extend(config.quantity.output_columns().iter().map(|c| c.to_string()));

    let axis_values: Vec<Vec<f64>> = config.grids.iter().map(GridAxis::values).collect();
    let total: usize = axis_values.iter().map(Vec::len).product();
    let base = Point {
        n: config.pinned.n.unwrap_or(0),
        j: config.pinned.j.unwrap_or(1.0),
        theta: config.pinned.theta.unwrap_or(0.0),
        chi: config.pinned.chi.unwrap_or(0.0),
        e: config.pinned.e.unwrap_or(0.0),
    };
    let rows = (0..total)
        .into_par_iter()
        .map(|idx| {
            let mut point = base;
            let mut swept = Vec::with_capacity(axis_values.len());
            let mut rem = idx;
            for (axis, values) in config.grids.iter().zip(&axis_values).rev() {
                let v = values[rem % values.len()];
                rem /= values.len();
                swept.push((axis.param, v));
            }
            swept.reverse();
            for &(param, v) in &swept {
                match param {
                    Param::N => point.n = v.round() as u32,
                    Param::Theta => point.theta = v,
                    Param::Chi => point.chi = v,
                    Param::Ent => point.e = v,
                }
            }
            let outputs = evaluate(config.quantity, point)?;
            let mut row = Vec::with_capacity(columns.len());
            row.extend(swept.iter().map(|&(_, v)| v));
            row.extend(prov.iter().map(|&(_, v)| v));
            row.extend(outputs);
            Ok(row)
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;

    Ok(Table {
        columns,
        rows,
        meta: Meta {
            quantity: config.quantity.name().to_string(),
            pinned: prov.iter().map(|&(name, v)| (name.to_string(), v)).collect(),
            grids: config
                .grids
                .iter()
                .map(|a| GridMeta {
                    param: a.param.name().to_string(),
                    start: a.start,
                    stop: a.stop,
                    count: a.count,
                })
                .collect(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
    })
}

/// CSV rendering: header line plus one line per row, every value in
/// 17-significant-digit scientific notation so that parsing and re-emitting
/// is byte-identical.
pub fn render_csv(table: &Table) -> String {
    let mut out = String::new();
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let mut first = true;
        for value in row {
            if !first {
                out.push(',');
            }
            first = false;
            let _ = write!(out, "{value:.16e}");
        }
        out.push('\n');
    }
    out
}

/// Parses CSV produced by [`render_csv`] back into columns and rows.
pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| invalid("empty CSV"))?;
    let columns: Vec<String> = header.split(',').map(str::to_string).collect();
    let mut rows = Vec::new();
    for (k, line) in lines.enumerate() {
        let row = line
            .split(',')
            .map(|cell| {
                cell.parse::<f64>()
                    .map_err(|_| invalid(format!("row {}: bad number '{cell}'", k + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        if row.len() != columns.len() {
            return Err(invalid(format!("row {} has {} cells", k + 1, row.len())));
        }
        rows.push(row);
    }
    Ok((columns, rows))
}

/// JSON rendering: one `{columns, rows, meta}` object, pretty-printed,
/// deterministic (map keys sorted).
pub fn render_json(table: &Table) -> String {
    let mut out = serde_json::to_string_pretty(table).expect("table serialization cannot fail");
    out.push('\n');
    out
}

const SVG_PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#e377c2",
];

/// One plotted polyline: series key (`None` for single-series tables), the
/// y-column index, and the (x, y) points in row order.
type Trace = (Option<f64>, usize, Vec<(f64, f64)>);

/// SVG rendering: a simple polyline plot. The x-axis is the innermost swept
/// parameter; rows are grouped into one series per value of the remaining
/// non-pinned column (particle count, or the per-block χ of merged figure
/// tables) when there is one, with the first output column plotted; a table
/// with a single series plots every output column instead. Non-finite
/// values split a polyline into segments.
pub fn render_svg(table: &Table) -> String {
    let col = |name: &str| table.columns.iter().position(|c| c == name);
    let x_name = table.meta.grids.last().map(|g| g.param.clone()).unwrap_or_default();
    let x_idx = col(&x_name).unwrap_or(0);
    let y_names: Vec<&str> = table
        .meta
        .quantity
        .parse::<Quantity>()
        .map(|q| q.output_columns().to_vec())
        .unwrap_or_else(|_| vec![table.columns.last().map(String::as_str).unwrap_or("value")]);
    let y_cols: Vec<usize> = y_names.iter().filter_map(|name| col(name)).collect();
    let series_idx = table.columns.iter().enumerate().position(|(i, name)| {
        i != x_idx
            && !y_cols.contains(&i)
            && !table.meta.pinned.contains_key(name)
            && table.rows.iter().any(|r| r[i] != table.rows[0][i])
    });

    // (series key, y column, points) triples in deterministic order.
    let mut traces: Vec<Trace> = Vec::new();
    match series_idx {
        Some(s) => {
            let mut keys: Vec<f64> = Vec::new();
            for row in &table.rows {
                if !keys.iter().any(|&k| k == row[s]) {
                    keys.push(row[s]);
                }
            }
            for key in keys {
                let points = table
                    .rows
                    .iter()
                    .filter(|r| r[s] == key)
                    .map(|r| (r[x_idx], r[y_cols[0]]))
                    .collect();
                traces.push((Some(key), y_cols[0], points));
            }
        }
        None => {
            for &y in &y_cols {
                let points = table.rows.iter().map(|r| (r[x_idx], r[y])).collect();
                traces.push((None, y, points));
            }
        }
    }

    let finite = |v: f64| v.is_finite();
    let mut x_lo = f64::INFINITY;
    let mut x_hi = f64::NEG_INFINITY;
    let mut y_lo = f64::INFINITY;
    let mut y_hi = f64::NEG_INFINITY;
    for (_, _, points) in &traces {
        for &(x, y) in points {
            if finite(x) {
                x_lo = x_lo.min(x);
                x_hi = x_hi.max(x);
            }
            if finite(y) {
                y_lo = y_lo.min(y);
                y_hi = y_hi.max(y);
            }
        }
    }
    if x_lo >= x_hi {
        x_lo -= 1.0;
        x_hi += 1.0;
    }
    if y_lo >= y_hi {
        y_lo -= 1.0;
        y_hi += 1.0;
    }
    let pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;

    let (left, right, top, bottom) = (70.0, 780.0, 25.0, 470.0);
    let sx = |x: f64| left + (x - x_lo) / (x_hi - x_lo) * (right - left);
    let sy = |y: f64| bottom - (y - y_lo) / (y_hi - y_lo) * (bottom - top);

    let mut svg = String::new();
    svg.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 520\" font-family=\"sans-serif\" font-size=\"12\">\n");
    svg.push_str("<rect width=\"800\" height=\"520\" fill=\"white\"/>\n");
    let _ = writeln!(
        svg,
        "<text x=\"400\" y=\"16\" text-anchor=\"middle\" font-size=\"14\">{}</text>",
        table.meta.quantity
    );
    // Axes and ticks.
    let _ = writeln!(
        svg,
        "<line x1=\"{left}\" y1=\"{bottom}\" x2=\"{right}\" y2=\"{bottom}\" stroke=\"black\"/>"
    );
    let _ = writeln!(
        svg,
        "<line x1=\"{left}\" y1=\"{top}\" x2=\"{left}\" y2=\"{bottom}\" stroke=\"black\"/>"
    );
    for k in 0..=5 {
        let fx = x_lo + (x_hi - x_lo) * k as f64 / 5.0;
        let fy = y_lo + (y_hi - y_lo) * k as f64 / 5.0;
        let px = sx(fx);
        let py = sy(fy);
        let _ = writeln!(
            svg,
            "<line x1=\"{px:.2}\" y1=\"{bottom}\" x2=\"{px:.2}\" y2=\"{}\" stroke=\"black\"/>",
            bottom + 5.0
        );
        let _ = writeln!(
            svg,
            "<text x=\"{px:.2}\" y=\"{}\" text-anchor=\"middle\">{fx:.3}</text>",
            bottom + 18.0
        );
        let _ = writeln!(
            svg,
            "<line x1=\"{}\" y1=\"{py:.2}\" x2=\"{left}\" y2=\"{py:.2}\" stroke=\"black\"/>",
            left - 5.0
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{:.2}\" text-anchor=\"end\">{fy:.3}</text>",
            left - 8.0,
            py + 4.0
        );
    }
    let _ = writeln!(
        svg,
        "<text x=\"{:.2}\" y=\"505\" text-anchor=\"middle\">{x_name}</text>",
        (left + right) / 2.0
    );

    for (t, (key, y, points)) in traces.iter().enumerate() {
        let color = SVG_PALETTE[t % SVG_PALETTE.len()];
        let mut segment: Vec<String> = Vec::new();
        let flush = |segment: &mut Vec<String>, svg: &mut String| {
            if segment.len() >= 2 {
                let _ = writeln!(
                    svg,
                    "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>",
                    segment.join(" ")
                );
            }
            segment.clear();
        };
        for &(x, yv) in points {
            if finite(x) && finite(yv) {
                segment.push(format!("{:.2},{:.2}", sx(x), sy(yv)));
            } else {
                flush(&mut segment, &mut svg);
            }
        }
        flush(&mut segment, &mut svg);
        let label = match (key, series_idx) {
            (Some(k), Some(s)) => format!("{} = {k:.4}", table.columns[s]),
            _ => table.columns[*y].clone(),
        };
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" fill=\"{color}\">{label}</text>",
            right - 140.0,
            top + 18.0 + 16.0 * t as f64
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// Renders a table in the requested format.
pub fn render(table: &Table, format: Format) -> String {
    match format {
        Format::Csv => render_csv(table),
        Format::Json => render_json(table),
        Format::Svg => render_svg(table),
    }
}

/// Renders a table and writes it to `path`.
pub fn emit(table: &Table, format: Format, path: &Path) -> Result<()> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    file.write_all(render(table, format).as_bytes())?;
    file.flush()?;
    Ok(())
}

/// The reproducible figure datasets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    /// Curvature against θ for n = 2…6.
    Fig2b,
    /// Cyclic phase against θ for n = 2…5.
    Fig3,
    /// Speed against θ for n = 2…6 at J = 1.
    Fig4a,
    /// FS-distance against θ for n = 2…6 at J = 1, χ = 1.
    Fig4b,
    /// Entanglement against χ for four θ values.
    Fig5,
    /// Entanglement-coordinate curvature against E at χ ∈ {0.5, 1, 1.5}.
    Fig6a,
    /// Geometric phase against E at χ ∈ {0.5, 1, 1.5}.
    Fig6b,
    /// Cyclic phase against E at χ ∈ {0.5, 1, 1.5}.
    Fig6c,
    /// Speed against E at χ ∈ {0.5, 1, 1.5}, J = 1.
    Fig7a,
    /// FS-distance against E at χ ∈ {0.5, 1, 1.5}, J = 1.
    Fig7b,
    /// Minimal time against E at χ ∈ {0.5, 1, 1.5}, J = 1.
    Fig7c,
}

impl FigureId {
    /// Every figure id.
    pub const ALL: [FigureId; 11] = [
        FigureId::Fig2b,
        FigureId::Fig3,
        FigureId::Fig4a,
        FigureId::Fig4b,
        FigureId::Fig5,
        FigureId::Fig6a,
        FigureId::Fig6b,
        FigureId::Fig6c,
        FigureId::Fig7a,
        FigureId::Fig7b,
        FigureId::Fig7c,
    ];

    /// Command-line name (also the output file stem).
    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig2b => "fig2b",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4a => "fig4a",
            FigureId::Fig4b => "fig4b",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6a => "fig6a",
            FigureId::Fig6b => "fig6b",
            FigureId::Fig6c => "fig6c",
            FigureId::Fig7a => "fig7a",
            FigureId::Fig7b => "fig7b",
            FigureId::Fig7c => "fig7c",
        }
    }
}

impl std::str::FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| invalid(format!("unknown figure id '{s}'")))
    }
}

impl std::fmt::Display for FigureId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// χ family shared by the entanglement-coordinate figures.
const ENT_FIGURE_CHIS: [f64; 3] = [0.5, 1.0, 1.5];

/// The sweep blocks behind one figure. Rectangular figures are a single
/// block; the E-axis figures use one block per χ because the reachable
/// E-window depends on χ.
pub fn figure_config(id: FigureId) -> Vec<SweepConfig> {
    use std::f64::consts::PI;
    let theta_axis = |count: usize| GridAxis {
        param: Param::Theta,
        start: 0.0,
        stop: PI,
        count,
    };
    let n_axis = |lo: u32, hi: u32| GridAxis {
        param: Param::N,
        start: lo as f64,
        stop: hi as f64,
        count: (hi - lo + 1) as usize,
    };
    let pin = Pinned::default();
    let ent_blocks = |quantity: Quantity, with_j: bool| {
        ENT_FIGURE_CHIS
            .iter()
            .map(|&chi| SweepConfig {
                quantity,
                pinned: Pinned {
                    chi: Some(chi),
                    j: with_j.then_some(1.0),
                    // θ = π/2 recorded as provenance: the E-window below is
                    // exactly the equatorial family's reachable band.
                    theta: Some(PI / 2.0),
                    ..pin
                },
                grids: vec![GridAxis {
                    param: Param::Ent,
                    start: 0.0,
                    stop: reachable_max(chi) - REACH_INSET,
                    count: 201,
                }],
            })
            .collect()
    };
    match id {
        FigureId::Fig2b => vec![SweepConfig {
            quantity: Quantity::Curvature,
            pinned: pin,
            grids: vec![n_axis(2, 6), theta_axis(201)],
        }],
        FigureId::Fig3 => vec![SweepConfig {
            quantity: Quantity::AaPhase,
            pinned: pin,
            grids: vec![n_axis(2, 5), theta_axis(201)],
        }],
        FigureId::Fig4a => vec![SweepConfig {
            quantity: Quantity::Speed,
            pinned: Pinned { j: Some(1.0), ..pin },
            grids: vec![n_axis(2, 6), theta_axis(201)],
        }],
        FigureId::Fig4b => vec![SweepConfig {
            quantity: Quantity::Distance,
            pinned: Pinned { j: Some(1.0), chi: Some(1.0), ..pin },
            grids: vec![n_axis(2, 6), theta_axis(201)],
        }],
        FigureId::Fig5 => vec![SweepConfig {
            quantity: Quantity::Entanglement,
            pinned: pin,
            grids: vec![
                GridAxis { param: Param::Theta, start: PI / 8.0, stop: PI / 2.0, count: 4 },
                GridAxis { param: Param::Chi, start: 0.0, stop: 2.0 * PI, count: 201 },
            ],
        }],
        FigureId::Fig6a => ent_blocks(Quantity::EntCurvature, false),
        FigureId::Fig6b => ent_blocks(Quantity::EntPhase, false),
        FigureId::Fig6c => ent_blocks(Quantity::EntAaPhase, false),
        FigureId::Fig7a => ent_blocks(Quantity::EntSpeed, true),
        FigureId::Fig7b => ent_blocks(Quantity::EntDistance, true),
        FigureId::Fig7c => ent_blocks(Quantity::EntTime, true),
    }
}

/// Runs all sweep blocks of a figure and merges them into one table.
pub fn figure_table(id: FigureId) -> Result<Table> {
    let configs = figure_config(id);
    let mut merged: Option<Table> = None;
    for config in &configs {
        let table = run_sweep(config)?;
        match &mut merged {
            None => merged = Some(table),
            Some(acc) => {
                debug_assert_eq!(acc.columns, table.columns);
                acc.rows.extend(table.rows);
                acc.meta.grids.extend(table.meta.grids);
                // Keep only pins shared (with equal values) by every block.
                acc.meta.pinned.retain(|k, v| table.meta.pinned.get(k) == Some(v));
            }
        }
    }
    merged.ok_or_else(|| invalid("figure produced no sweep blocks"))
}

/// Writes `<id>.csv` and `<id>.svg` for a figure into `out_dir`, creating
/// the directory if needed; returns the written paths.
pub fn reproduce_figure(id: FigureId, out_dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir)?;
    let table = figure_table(id)?;
    let mut written = Vec::new();
    for format in [Format::Csv, Format::Svg] {
        let path = out_dir.join(format!("{}.{}", id.name(), format.name()));
        emit(&table, format, &path)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn curvature_config() -> SweepConfig {
        SweepConfig {
            quantity: Quantity::Curvature,
            pinned: Pinned { n: Some(2), ..Pinned::default() },
            grids: vec![GridAxis { param: Param::Theta, start: 0.0, stop: PI, count: 100 }],
        }
    }

    #[test]
    fn quantity_names_round_trip() {
        for q in Quantity::ALL {
            assert_eq!(q.name().parse::<Quantity>().unwrap(), q);
        }
        assert!("bogus".parse::<Quantity>().is_err());
    }

    #[test]
    fn figure_ids_round_trip() {
        for f in FigureId::ALL {
            assert_eq!(f.name().parse::<FigureId>().unwrap(), f);
        }
        assert!("fig9".parse::<FigureId>().is_err());
    }

    #[test]
    fn curvature_sweep_matches_expected_shape() {
        let table = run_sweep(&curvature_config()).unwrap();
        assert_eq!(table.columns, vec!["theta", "n", "curvature"]);
        assert_eq!(table.rows.len(), 100);
        let first = table.rows.first().unwrap();
        let last = table.rows.last().unwrap();
        assert!((first[2] - 10.0).abs() < 1e-9);
        assert!((last[2] - 10.0).abs() < 1e-9);
    }

    #[test]
    fn aa_phase_surface_dips_at_equator() {
        let config = SweepConfig {
            quantity: Quantity::AaPhase,
            pinned: Pinned::default(),
            grids: vec![
                GridAxis { param: Param::N, start: 2.0, stop: 5.0, count: 4 },
                GridAxis { param: Param::Theta, start: 0.0, stop: PI, count: 51 },
            ],
        };
        let table = run_sweep(&config).unwrap();
        assert_eq!(table.rows.len(), 4 * 51);
        for block in table.rows.chunks(51) {
            let min_row = block
                .iter()
                .min_by(|a, b| a[2].partial_cmp(&b[2]).unwrap())
                .unwrap();
            assert!((min_row[1] - FRAC_PI_2).abs() < 1e-12);
        }
    }

    #[test]
    fn ent_speed_sweep_peaks_at_reach() {
        let config = SweepConfig {
            quantity: Quantity::EntSpeed,
            pinned: Pinned { chi: Some(FRAC_PI_2), ..Pinned::default() },
            grids: vec![GridAxis { param: Param::Ent, start: 0.0, stop: 0.5, count: 51 }],
        };
        let table = run_sweep(&config).unwrap();
        let speed_col = table.columns.iter().position(|c| c == "speed").unwrap();
        let best = table
            .rows
            .iter()
            .max_by(|a, b| a[speed_col].partial_cmp(&b[speed_col]).unwrap())
            .unwrap();
        assert!((best[0] - 0.5).abs() < 1e-12);
        assert!((best[speed_col] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn validation_rejects_malformed_configs() {
        let mut no_axis = curvature_config();
        no_axis.grids.clear();
        assert!(run_sweep(&no_axis).is_err());

        let mut one_point = curvature_config();
        one_point.grids[0].count = 1;
        assert!(run_sweep(&one_point).is_err());

        let mut out_of_domain = curvature_config();
        out_of_domain.grids[0].stop = 4.0;
        assert!(run_sweep(&out_of_domain).is_err());

        let mut irrelevant_axis = curvature_config();
        irrelevant_axis.grids.push(GridAxis {
            param: Param::Chi,
            start: 0.0,
            stop: 1.0,
            count: 5,
        });
        assert!(run_sweep(&irrelevant_axis).is_err());

        let mut pinned_and_swept = curvature_config();
        pinned_and_swept.pinned.theta = Some(1.0);
        assert!(run_sweep(&pinned_and_swept).is_err());

        let mut missing_n = curvature_config();
        missing_n.pinned.n = None;
        assert!(run_sweep(&missing_n).is_err());
    }

    #[test]
    fn topological_phase_accepts_a_pointwise_request() {
        let config = SweepConfig {
            quantity: Quantity::TopologicalPhase,
            pinned: Pinned { n: Some(2), ..Pinned::default() },
            grids: vec![],
        };
        let table = run_sweep(&config).unwrap();
        assert_eq!(table.rows.len(), 1);
        assert!((table.rows[0][1] + 2.0 * PI).abs() < 1e-15);
    }

    #[test]
    fn csv_shape_and_round_trip() {
        let mut config = curvature_config();
        config.grids[0].count = 3;
        let table = run_sweep(&config).unwrap();
        let csv = render_csv(&table);
        assert_eq!(csv.lines().count(), 4);
        assert!(!csv.contains('\r'));
        let (columns, rows) = parse_csv(&csv).unwrap();
        assert_eq!(columns, table.columns);
        let back = Table { columns, rows, meta: table.meta.clone() };
        assert_eq!(render_csv(&back), csv);
    }

    #[test]
    fn sweeps_are_deterministic() {
        let a = run_sweep(&curvature_config()).unwrap();
        let b = run_sweep(&curvature_config()).unwrap();
        assert_eq!(render_csv(&a), render_csv(&b));
        assert_eq!(render_json(&a), render_json(&b));
    }

    #[test]
    fn json_carries_provenance() {
        let table = run_sweep(&curvature_config()).unwrap();
        let value: serde_json::Value = serde_json::from_str(&render_json(&table)).unwrap();
        assert_eq!(value["meta"]["quantity"], "curvature");
        assert_eq!(value["meta"]["pinned"]["n"], 2.0);
        assert_eq!(value["meta"]["grids"][0]["param"], "theta");
        assert!(value["meta"]["version"].is_string());
    }

    #[test]
    fn svg_is_well_formed() {
        let table = figure_table(FigureId::Fig2b).unwrap();
        let svg = render_svg(&table);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("<polyline"));
        // One series per particle number.
        assert_eq!(svg.matches("n = ").count(), 5);
    }

    #[test]
    fn figure_blocks_share_columns() {
        let table = figure_table(FigureId::Fig6a).unwrap();
        assert_eq!(table.columns, vec!["E", "theta", "chi", "curvature"]);
        assert_eq!(table.rows.len(), 3 * 201);
        // Decreasing curves starting at 10 for E = 0.
        assert!((table.rows[0][3] - 10.0).abs() < 1e-9);
    }

    #[test]
    fn emit_writes_the_rendered_bytes() {
        let mut config = curvature_config();
        config.grids[0].count = 5;
        let table = run_sweep(&config).unwrap();
        let path = std::env::temp_dir().join("qgeom-sweep-emit-test.csv");
        emit(&table, Format::Csv, &path).unwrap();
        let bytes = std::fs::read_to_string(&path).unwrap();
        assert_eq!(bytes, render_csv(&table));
        let _ = std::fs::remove_file(&path);
    }
}
