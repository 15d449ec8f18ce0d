//! The two-spin system in entanglement coordinates.
//!
//! For a pair of spins the geometric measure of entanglement of the evolved
//! state has the closed form
//!
//! ```text
//! E(θ, χ) = (1/2)[1 − √(1 − sin⁴θ sin²χ)],   E ∈ [0, 1/2],
//! ```
//!
//! which lets every geometric and dynamical quantity of the pair be
//! re-expressed with the entanglement itself as a coordinate: the metric in
//! `(E, χ)` and its diagonal `(E_r, χ)` form, the scalar curvature, the
//! geometric and cyclic phases, the evolution speed, the FS-distance, and
//! the minimal evolution time, together with the critical entanglement
//! points where the geometric phase bottoms out and the speed peaks.
//!
//! Because the map `(θ, χ) ↦ (E, χ)` is not invertible (the two branches
//! `θ` and `π − θ` share an image) and not onto (no trajectory produces
//! `2√(E(1−E)) > |sin χ|`), the chart is handled with an explicit
//! reachability predicate: [`EntCoord`] can only be built for points some
//! trajectory actually visits, and the inversion back to θ — needed only by
//! cross-validation suites — is pinned to the principal branch
//! `θ ∈ [0, π/2]`.
//!
//! A fact worth stating up front: on the *reachable* chart of the pair the
//! curvature satisfies `0 ≤ R ≤ 10` everywhere (zero exactly on the
//! reachability boundary, i.e. the θ = π/2 trajectories). The displayed
//! negativity condition has solutions only in the formal band
//! `2√(E(1−E)) > |sin χ|` beyond the boundary, which no state visits.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::numerics::golden_min;
use crate::statevector::StateVector;
use crate::{Error, Result};

/// Slack allowed on the reachability predicate `2√(E(1−E)) ≤ |sin χ|`.
pub const REACH_TOL: f64 = 1e-12;

/// Below this `|sin χ|` the `(E, χ)` chart is treated as singular.
pub const SIN_CHI_EPS: f64 = 1e-10;

/// Distance to a chart edge (`E = 0` or the reachability boundary) under
/// which the `(E, χ)` metric is reported singular instead of evaluated.
pub const EDGE_EPS: f64 = 1e-12;

/// Tolerance of the golden-section searches for critical entanglement.
pub const SEARCH_TOL: f64 = 1e-8;

/// Inset keeping search brackets strictly inside the open domain.
pub const SEARCH_INSET: f64 = 1e-9;

/// `√(E(1−E))` — the combination every entanglement-coordinate formula is
/// built from.
fn ent_radius(e: f64) -> f64 {
    (e * (1.0 - e)).max(0.0).sqrt()
}

/// A point of the entanglement chart: entanglement level and evolution
/// parameter as independent coordinates.
///
/// Construction enforces the chart's domain, so every operation taking an
/// `EntCoord` can assume `E ∈ [0, 1/2]` and reachability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntCoord {
    e: f64,
    chi: f64,
}

impl EntCoord {
    /// Validates `E ∈ [0, 1/2]` and the reachability predicate
    /// `2√(E(1−E)) ≤ |sin χ|` (within [`REACH_TOL`]); in particular
    /// `sin χ = 0` forces `E = 0`.
    pub fn new(e: f64, chi: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&e) {
            return Err(Error::EntanglementRange { e });
        }
        if !chi.is_finite() || 2.0 * ent_radius(e) > chi.sin().abs() + REACH_TOL {
            return Err(Error::Unreachable { e, chi });
        }
        Ok(Self { e, chi })
    }

    /// Entanglement level.
    pub fn e(&self) -> f64 {
        self.e
    }

    /// Evolution parameter.
    pub fn chi(&self) -> f64 {
        self.chi
    }
}

/// Reduced entanglement `E_r ∈ [0, 1]` — the coordinate in which the
/// two-spin metric is diagonal (`E_r = sin²θ` along trajectories).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedEnt {
    e_r: f64,
}

impl ReducedEnt {
    /// Validates `E_r ∈ [0, 1]`.
    pub fn new(e_r: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&e_r) {
            return Err(Error::ReducedEntanglementRange { e_r });
        }
        Ok(Self { e_r })
    }

    /// The reduced entanglement value.
    pub fn value(&self) -> f64 {
        self.e_r
    }
}

/// Metric components of the two-spin state space in `(E, χ)` coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntMetric {
    /// Coefficient of `dE²`.
    pub g_ee: f64,
    /// Symmetric off-diagonal component (half the `dE dχ` coefficient).
    pub g_ec: f64,
    /// Coefficient of `dχ²`.
    pub g_cc: f64,
}

/// Closed-form and numerically located critical entanglement of the
/// geometric phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPhase {
    /// The closed-form expression evaluated verbatim (may be `NaN` where
    /// its nested radicals leave the real line).
    pub closed: f64,
    /// Golden-section argmin of the geometric phase over the reachable
    /// entanglement window — the authoritative value.
    pub numeric: f64,
}

impl CriticalPhase {
    /// Absolute disagreement between the closed form and the numeric
    /// minimizer — reported by callers, never asserted away.
    pub fn deviation(&self) -> f64 {
        (self.closed - self.numeric).abs()
    }
}

/// The evolved two-spin state assembled directly from its four closed-form
/// amplitudes
/// `[e^{−iχ}cos²(θ/2), (1/2)e^{iφ}sinθ, (1/2)e^{iφ}sinθ, e^{i(2φ−χ)}sin²(θ/2)]`
/// — identical (including global phase) to building the coherent pair state
/// and evolving it for `t = χ/J`.
pub fn two_spin_state(theta: f64, phi: f64, chi: f64) -> StateVector {
    let half = theta / 2.0;
    let (c2, s2) = (half.cos().powi(2), half.sin().powi(2));
    let amps = vec![
        c2 * Complex64::cis(-chi),
        0.5 * theta.sin() * Complex64::cis(phi),
        0.5 * theta.sin() * Complex64::cis(phi),
        s2 * Complex64::cis(2.0 * phi - chi),
    ];
    StateVector::raw(2, amps).expect("four amplitudes always fit two spins")
}

/// Geometric measure of entanglement of the evolved pair,
/// `E = (1/2)[1 − √(1 − sin⁴θ sin²χ)]`.
pub fn entanglement(theta: f64, chi: f64) -> f64 {
    let u = theta.sin().powi(4) * chi.sin().powi(2);
    0.5 * (1.0 - (1.0 - u).max(0.0).sqrt())
}

/// Largest entanglement the trajectory through θ ever attains:
/// `E_max = (1/2)[1 − √(1 − sin⁴θ)]`.
pub fn entanglement_max(theta: f64) -> f64 {
    0.5 * (1.0 - (1.0 - theta.sin().powi(4)).max(0.0).sqrt())
}

/// Largest entanglement reachable at fixed χ (the θ = π/2 trajectory),
/// `E_reach = (1 − |cos χ|)/2` — the boundary of the `(E, χ)` chart.
pub fn reachable_max(chi: f64) -> f64 {
    0.5 * (1.0 - chi.cos().abs())
}

/// Analytic partials `(∂E/∂θ, ∂E/∂χ)` of the entanglement closed form,
/// used by the chart-change cross-validations. Diverge where `E = 1/2`
/// (the square root's branch point).
pub fn entanglement_partials(theta: f64, chi: f64) -> (f64, f64) {
    let (st, ct) = (theta.sin(), theta.cos());
    let (sc, cc) = (chi.sin(), chi.cos());
    let root = (1.0 - st.powi(4) * sc * sc).max(0.0).sqrt();
    (st.powi(3) * ct * sc * sc / root, st.powi(4) * sc * cc / (2.0 * root))
}

/// Reduced entanglement of a chart point, `E_r = 2√(E(1−E))/|sin χ|`.
pub fn reduced_entanglement(coord: EntCoord) -> Result<ReducedEnt> {
    let s = coord.chi().sin().abs();
    if s < SIN_CHI_EPS {
        return Err(Error::SinChiZero { chi: coord.chi() });
    }
    ReducedEnt::new((2.0 * ent_radius(coord.e()) / s).min(1.0))
}

/// Principal-branch inversion `θ = arcsin√E_r ∈ [0, π/2]` of the
/// entanglement map — the oracle the cross-validation suites use to return
/// from chart points to angles (the mirror branch `π − θ` has the same
/// image).
pub fn theta_from_entanglement(coord: EntCoord) -> Result<f64> {
    Ok(reduced_entanglement(coord)?.value().sqrt().asin())
}

/// The `(E, χ)` metric of the two-spin state space.
///
/// Finite only strictly inside the chart: both edges — `E = 0` and the
/// reachability boundary `2√(E(1−E)) = |sin χ|` — blow up (the diagonal
/// reduced-entanglement form stays finite on the latter), and `sin χ = 0`
/// is a coordinate singularity.
pub fn metric_ent(coord: EntCoord) -> Result<EntMetric> {
    let (e, chi) = (coord.e(), coord.chi());
    let s = chi.sin().abs();
    if s < SIN_CHI_EPS {
        return Err(Error::SinChiZero { chi });
    }
    let x = ent_radius(e);
    let edge = s - 2.0 * x;
    if x < EDGE_EPS || edge < EDGE_EPS {
        return Err(Error::BoundarySingular { e, chi });
    }
    let w = 1.0 - 2.0 * e;
    let cot = chi.cos() / chi.sin();
    let g_ee = w * w / (16.0 * x.powi(3) * edge);
    let g_ec = -w * cot / (8.0 * x * edge);
    let g_cc = x / (s * s) * (chi.cos().powi(2) / (4.0 * edge) + (s - x));
    Ok(EntMetric { g_ee, g_ec, g_cc })
}

/// Diagonal form of the two-spin metric in `(E_r, χ)`:
/// `g_rr = 1/(8E_r(1−E_r))`, `g_cc = (1/4)E_r(2−E_r)`.
///
/// The endpoints `E_r ∈ {0, 1}` are singular for `g_rr`; the circle
/// component alone remains finite there and is available as
/// [`circle_metric`].
pub fn metric_ent_diagonal(e_r: ReducedEnt) -> Result<(f64, f64)> {
    let r = e_r.value();
    if r <= 0.0 || r >= 1.0 {
        return Err(Error::DiagonalEndpoint { e_r: r });
    }
    Ok((1.0 / (8.0 * r * (1.0 - r)), circle_metric(e_r)))
}

/// Metric of the circle of constant reduced entanglement,
/// `dS² = (1/4)E_r(2−E_r)dχ²` — radius `(1/2)√(E_r(2−E_r))`. Finite on all
/// of `E_r ∈ [0, 1]`.
pub fn circle_metric(e_r: ReducedEnt) -> f64 {
    let r = e_r.value();
    0.25 * r * (2.0 - r)
}

/// Scalar curvature of the two-spin state space in entanglement
/// coordinates,
/// `R = 8[2 + (2√(E(1−E)) − 3|sinχ|)·|sinχ| / (4(√(E(1−E)) − |sinχ|)²)]`.
///
/// At `E = 0` this is the global maximum `R = 10`; on the reachability
/// boundary it vanishes. The static `χ = 0` value is *not* evaluated here
/// (it is 0/0 at the only reachable point) — see
/// [`curvature_static_limit`].
pub fn curvature_ent(coord: EntCoord) -> Result<f64> {
    let s = coord.chi().sin().abs();
    if s < SIN_CHI_EPS {
        return Err(Error::SinChiZero { chi: coord.chi() });
    }
    let x = ent_radius(coord.e());
    Ok(8.0 * (2.0 + (2.0 * x - 3.0 * s) * s / (4.0 * (x - s).powi(2))))
}

/// Curvature of the static (`χ = 0`) condition: the closed form is then
/// independent of E and equal to 16, the curvature of the initial-state
/// sphere. Provided as an explicit limit value because the only reachable
/// point at `sin χ = 0` (namely `E = 0`) makes the formula 0/0.
pub fn curvature_static_limit() -> f64 {
    16.0
}

/// Whether the chart point has negative curvature, by the displayed
/// inequality `(2√(E(1−E)) − 3|sinχ|)·|sinχ| < −8(√(E(1−E)) − |sinχ|)²` —
/// identically the sign test of [`curvature_ent`].
///
/// On reachable coordinates this is always false for the pair (see the
/// module notes); the inequality's solution band lies beyond the
/// reachability boundary.
pub fn curvature_negative(coord: EntCoord) -> Result<bool> {
    let s = coord.chi().sin().abs();
    if s < SIN_CHI_EPS {
        return Err(Error::SinChiZero { chi: coord.chi() });
    }
    let x = ent_radius(coord.e());
    Ok((2.0 * x - 3.0 * s) * s < -8.0 * (x - s).powi(2))
}

/// Curvature at the trajectory's maximal entanglement,
/// `R_min = 8[2 + (sin²θ − 3|sinχ|)·|sinχ|/(sin²θ − 2|sinχ|)²]` —
/// identically [`curvature_ent`] evaluated at `E = entanglement_max(θ)`.
pub fn curvature_min(theta: f64, chi: f64) -> Result<f64> {
    let m = theta.sin().powi(2);
    let s = chi.sin().abs();
    let denom = m - 2.0 * s;
    if denom.abs() < 1e-12 {
        return Err(Error::MinCurvatureSingular { theta, chi });
    }
    Ok(8.0 * (2.0 + (m - 3.0 * s) * s / (denom * denom)))
}

/// Geometric phase of the pair in entanglement coordinates: with
/// `x = √(E(1−E))` and `u = 1 − x/|sinχ|`,
///
/// ```text
/// γ_g = atan2(−u sinχ, u cosχ + x/|sinχ|) + χ·u,
/// ```
///
/// the branch-safe reading of the displayed arctangent. Agrees with the
/// two-spin geometric phase modulo 2π at every physical point.
pub fn geometric_phase_ent(coord: EntCoord) -> Result<f64> {
    let chi = coord.chi();
    let s = chi.sin().abs();
    if s < SIN_CHI_EPS {
        return Err(Error::SinChiZero { chi });
    }
    let v = ent_radius(coord.e()) / s;
    let u = 1.0 - v;
    Ok((-u * chi.sin()).atan2(u * chi.cos() + v) + chi * u)
}

/// Verbatim evaluation of the closed-form critical entanglement of the
/// geometric phase (nested sinc/csc/sec radicals); kept bit-for-bit as
/// displayed so its disagreement with the numeric minimizer can be
/// reported honestly. `NaN` where an inner radical goes negative.
fn critical_phase_closed(chi: f64) -> f64 {
    let half = chi / 2.0;
    let sinc = chi.sin() / chi;
    let cot_half = half.cos() / half.sin();
    let inner = chi.powi(3)
        * (2.0 - chi * cot_half)
        * half.sin().powi(-5)
        * half.cos().powi(-11);
    let tail = 8.0 * half.cos().powi(8) * half.sin().powi(4) * inner.sqrt() / chi.powi(2);
    let radicand =
        2.0 + 2.0 * chi.cos() + (2.0 * chi).cos() - 2.0 * (1.0 + chi.cos()) * sinc + tail;
    0.5 * (1.0 - radicand.sqrt())
}

/// Critical entanglement of the geometric phase at fixed χ: the
/// entanglement level where `γ_g(·, χ)` attains its interior minimum.
///
/// Returns both the closed-form expression (evaluated verbatim) and the
/// golden-section minimizer over `(0, E_reach(χ))`; the numeric value is
/// authoritative and the pair's [`CriticalPhase::deviation`] is for
/// reporting. A coarse scan verifies the minimum is interior before the
/// search; if it is not, [`crate::Error::NoInteriorExtremum`] is returned.
pub fn critical_entanglement_phase(chi: f64) -> Result<CriticalPhase> {
    if chi.sin().abs() < SIN_CHI_EPS {
        return Err(Error::SinChiZero { chi });
    }
    let lo = SEARCH_INSET;
    let hi = reachable_max(chi) - SEARCH_INSET;
    if hi <= lo {
        return Err(Error::NoInteriorExtremum { chi });
    }
    let phase_at = |e: f64| {
        let coord = EntCoord::new(e, chi).expect("inside the reachable window");
        geometric_phase_ent(coord).expect("sin chi checked non-zero above")
    };
    let scan = 1000;
    let mut best = (0usize, f64::INFINITY);
    for k in 0..=scan {
        let g = phase_at(lo + (hi - lo) * k as f64 / scan as f64);
        if g < best.1 {
            best = (k, g);
        }
    }
    if best.0 == 0 || best.0 == scan {
        return Err(Error::NoInteriorExtremum { chi });
    }
    let numeric = golden_min(phase_at, lo, hi, SEARCH_TOL);
    Ok(CriticalPhase { closed: critical_phase_closed(chi), numeric })
}

/// Cyclic (Aharonov–Anandan) geometric phase in entanglement coordinates,
/// `γ = −2π√(E(1−E))/|sinχ|` — identically `−π·E_r`, so it interpolates
/// from 0 (no entanglement) to `−π` (reachability boundary).
pub fn aa_phase_ent(coord: EntCoord) -> Result<f64> {
    let s = coord.chi().sin().abs();
    if s < SIN_CHI_EPS {
        return Err(Error::SinChiZero { chi: coord.chi() });
    }
    Ok(-2.0 * PI * ent_radius(coord.e()) / s)
}

/// Evolution speed in entanglement coordinates,
/// `V = (J/|sinχ|)·√(√(E(1−E))·(|sinχ| − √(E(1−E))))`.
///
/// Zero exactly at `E = 0` (stationary states); maximal, with value `J/2`,
/// on the reachability boundary.
pub fn speed_ent(coord: EntCoord, j: f64) -> f64 {
    let x = ent_radius(coord.e());
    let s = coord.chi().sin().abs();
    // The second disjunct only fires inside the REACH_TOL slack around
    // sin χ = 0, where E ≲ 1e-24 — stationary to working precision.
    if x == 0.0 || s <= x {
        return 0.0;
    }
    j / s * (x * (s - x)).sqrt()
}

/// Critical entanglement of the speed: the level maximising `speed_ent`
/// at fixed χ, which is the reachability boundary `E_reach(χ) =
/// (1 − |cosχ|)/2`. For `χ ∈ (0, π/2]` this is exactly `sin²(χ/2)`; past
/// `π/2` the textbook `sin²(χ/2)` form would exceed the measure's range
/// `E ≤ 1/2` and the boundary value is the correct continuation.
pub fn critical_entanglement_speed(chi: f64) -> Result<f64> {
    if chi.sin().abs() < SIN_CHI_EPS {
        return Err(Error::SinChiZero { chi });
    }
    Ok(reachable_max(chi))
}

/// FS-distance covered in entanglement coordinates,
/// `S = (χ/|sinχ|)·√(√(E(1−E))·(|sinχ| − √(E(1−E))))` — i.e.
/// `speed_ent·(χ/J)`. Callers supply χ ≥ 0.
pub fn distance_ent(coord: EntCoord) -> f64 {
    coord.chi() * speed_ent(coord, 1.0)
}

/// Minimal (brachistochrone) time in entanglement coordinates,
/// `τ = (2χ/(J|sinχ|))·√(√(E(1−E))·(|sinχ| − √(E(1−E))))` — the distance
/// referred to the maximal speed `J/2`. Satisfies `τ ≤ χ/J`, with equality
/// exactly at the speed-critical entanglement.
pub fn optimal_time_ent(coord: EntCoord, j: f64) -> f64 {
    2.0 * distance_ent(coord) / j
}

/// Metric of the one-dimensional manifold of optimum (minimal-time)
/// states, attached to `dϑ²` with `ϑ = Jτ`:
/// `(1/sin²χ)·√(E(1−E))·(|sinχ| − √(E(1−E)))` — identically
/// `(speed_ent/J)²`.
pub fn optimal_metric_ent(coord: EntCoord) -> f64 {
    let v = speed_ent(coord, 1.0);
    v * v
}
