//! Exact quantum geometry of `n` spin-1/2 particles under a uniform all-pair
//! Ising coupling.
//!
//! The model Hamiltonian is diagonal in the computational basis,
//!
//! ```text
//! H = J (Σ_i S_z^i)²,    eigenvalues  J (n − 2p)² / 4,
//! ```
//!
//! where `p` counts the down spins of a basis state. Starting from the
//! spin-coherent product state fixed by the polar/azimuthal angles `(θ, φ)`,
//! the evolved state depends on time only through the dimensionless parameter
//! `χ = J·t`. Every geometric and dynamical quantity of this family —
//! Fubini–Study metric, Riemann curvature, total/dynamical/geometric phases,
//! cyclic (Aharonov–Anandan) and topological phases, evolution speed,
//! FS-distance, brachistochrone time, and the two-spin entanglement
//! reformulations — has a closed form. This crate implements all of them and
//! pairs each with an independent numeric route built on an exact
//! `2^n`-dimensional statevector oracle, so the closed forms can be
//! cross-validated rather than trusted.
//!
//! Module map:
//!
//! - [`statevector`] — the exact `2^n` oracle: state construction, diagonal
//!   evolution, overlaps, energy moments, reduced Bloch vectors, parametric
//!   tangents.
//! - [`geometry`] — Fubini–Study metric components, Christoffel symbols, and
//!   scalar curvature in the `(θ, φ, χ)` / `(θ, χ)` charts.
//! - [`phases`] — total, dynamical, geometric, Aharonov–Anandan, and
//!   topological phases.
//! - [`dynamics`] — evolution speed, FS-distance, and the quantum
//!   brachistochrone (minimal evolution time).
//! - [`entangle`] — the two-spin system in entanglement coordinates `(E, χ)`:
//!   metric, curvature, phases, speed, distance, optimal time, and the
//!   critical entanglement points.
//! - [`sweep`] — parameter sweeps, figure presets, and CSV/JSON/SVG emission
//!   consumed by the command-line front end.
//! - [`numerics`] — the small numerical toolbox shared by the oracles
//!   (central differences, golden-section search, trapezoid quadrature,
//!   phase unwrapping).

#![forbid(unsafe_code)]

pub mod dynamics;
pub mod entangle;
pub mod geometry;
pub mod numerics;
pub mod phases;
pub mod statevector;
pub mod sweep;

use thiserror::Error;

/// Errors reported by the library.
///
/// Domain violations are distinguished from I/O failures so the command-line
/// front end can map them to distinct exit codes.
#[derive(Debug, Error)]
pub enum Error {
    /// Particle count outside what the dense statevector oracle can hold,
    /// or below the minimum a formula requires.
    #[error("particle count n = {n} outside supported range [{min}, {max}]")]
    ParticleCount { n: u32, min: u32, max: u32 },

    /// Operations defined only for interacting ensembles (n ≥ 2).
    #[error("operation requires at least two particles (got n = {n})")]
    NeedsPair { n: u32 },

    /// Polar angle outside `[0, π]`.
    #[error("polar angle theta = {theta} outside [0, pi]")]
    ThetaRange { theta: f64 },

    /// Polar angle outside the window where a finite-difference stencil
    /// stays inside `[0, π]` at full accuracy.
    #[error("theta = {theta} outside differencing window [{lo}, {hi}]")]
    ThetaWindow { theta: f64, lo: f64, hi: f64 },

    /// Metric degenerate (vanishing `g_χχ`): θ at a pole or n < 2.
    #[error("metric is degenerate at theta = {theta} for n = {n} (g_chichi = 0)")]
    DegenerateMetric { n: u32, theta: f64 },

    /// Statevectors of different dimension combined.
    #[error("statevector dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// Amplitude vector does not have unit norm.
    #[error("statevector norm² = {norm_sq} deviates from 1 beyond 1e-12")]
    NotNormalized { norm_sq: f64 },

    /// Amplitude vector length is not `2^n`.
    #[error("amplitude count {len} does not equal 2^{n}")]
    BadDimension { n: u32, len: usize },

    /// Spin site index out of range.
    #[error("site index {site} out of range for n = {n}")]
    SiteRange { site: u32, n: u32 },

    /// A finite-difference step would leave the θ-domain.
    #[error("theta = {theta} ± step {step} leaves [0, pi]")]
    StepLeavesDomain { theta: f64, step: f64 },

    /// Non-positive or otherwise unusable step / step count.
    #[error("invalid numerical step: {reason}")]
    BadStep { reason: String },

    /// The overlap with the initial state vanishes; the total and geometric
    /// phases have no defined value there.
    #[error("phase undefined: |overlap| = {magnitude:.3e} below 1e-10")]
    PhaseUndefined { magnitude: f64 },

    /// Negative evolution time passed to a duration formula.
    #[error("evolution time t = {t} must be non-negative")]
    NegativeTime { t: f64 },

    /// Entanglement value outside `[0, 1/2]`.
    #[error("entanglement E = {e} outside [0, 1/2]")]
    EntanglementRange { e: f64 },

    /// Reduced entanglement outside `[0, 1]`.
    #[error("reduced entanglement E_r = {e_r} outside [0, 1]")]
    ReducedEntanglementRange { e_r: f64 },

    /// `(E, χ)` point that no trajectory of the model reaches
    /// (`2√(E(1−E)) > |sin χ|`).
    #[error("unreachable entanglement coordinate (E = {e}, chi = {chi}): 2*sqrt(E(1-E)) exceeds |sin chi|")]
    Unreachable { e: f64, chi: f64 },

    /// Coordinate singularity of the `(E, χ)` chart at `sin χ = 0`.
    #[error("entanglement coordinates are singular at sin(chi) = 0 (chi = {chi})")]
    SinChiZero { chi: f64 },

    /// An edge of the `(E, χ)` chart where the metric blows up: `E = 0` or
    /// the reachability boundary `2√(E(1−E)) = |sin χ|` (the diagonal
    /// reduced-entanglement chart stays finite on the latter).
    #[error("(E, chi) metric singular at chart edge (E = {e}, chi = {chi})")]
    BoundarySingular { e: f64, chi: f64 },

    /// Endpoint of the reduced-entanglement chart where the diagonal
    /// `g_rr` component diverges.
    #[error("diagonal metric component g_rr is singular at E_r = {e_r}")]
    DiagonalEndpoint { e_r: f64 },

    /// Pole of the minimal-curvature formula at `sin²θ = 2|sin χ|`.
    #[error("minimal curvature undefined at sin^2(theta) = 2|sin(chi)| (theta = {theta}, chi = {chi})")]
    MinCurvatureSingular { theta: f64, chi: f64 },

    /// Unimodality scan found no interior extremum to bracket.
    #[error("no interior extremum of the scanned quantity for chi = {chi}")]
    NoInteriorExtremum { chi: f64 },

    /// Sweep configuration problems: bad grids, missing or contradictory
    /// parameters.
    #[error("invalid sweep: {reason}")]
    InvalidSweep { reason: String },

    /// File-system failure while emitting results.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for error conditions caused by invalid parameters or evaluation
    /// at singular points — everything except file-system failures.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::Io(_))
    }
}
