//! Evolution speed, Fubini–Study distance, and the brachistochrone (minimal
//! evolution time) of the spin ensemble.
//!
//! Because the generator is time-independent and diagonal, the speed along
//! the evolution path is the energy uncertainty, `V = J·√g_χχ`, constant in
//! time; the FS-distance covered is simply `S = V·t`. Maximising `V` over θ
//! gives the fastest ensemble (`cos²θ_max = (n−2)/(2n−3)`), and referring
//! the distance at θ = π/2 to that maximal speed yields the minimal transit
//! time `t_min = t·√(2n−3)/(n−1)` — equal to `t` only for a single pair of
//! spins, strictly shorter for every larger ensemble.

use crate::geometry::g_cc_closed;
use crate::{Error, Result};

/// Speed, distance, and minimal-time summary for one `(n, θ, J, t)` point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrachistochroneReport {
    /// Evolution speed at θ (FS-length per unit time).
    pub v: f64,
    /// Maximal speed over θ at this n.
    pub v_max: f64,
    /// Angle attaining the maximal speed, in (0, π/2].
    pub theta_max: f64,
    /// FS-distance covered in time t at θ.
    pub s: f64,
    /// Minimal FS-distance (the θ = π/2 value) for the same duration.
    pub s_min: f64,
    /// Minimal transit time `s_min / v_max`.
    pub t_min: f64,
    /// Minimal time in dimensionless form, `χ_min = J·t_min`.
    pub chi_min: f64,
}

fn require_pair(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::NeedsPair { n });
    }
    Ok(())
}

/// Evolution speed `V = (J/2)·√(n(n−1)sin²θ·[1/2 + (n−3/2)cos²θ])`.
///
/// Identically `J·√g_χχ`. Vanishes for a single spin (the generator acts as
/// a global phase) and at both poles.
pub fn speed(n: u32, theta: f64, j: f64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    j * g_cc_closed(n, theta).sqrt()
}

/// Angle of maximal speed, `θ_max = arccos√((n−2)/(2n−3))`, in (0, π/2].
///
/// The mirror angle π − θ_max is equally maximal; the principal
/// representative is returned. Approaches π/4 as n grows.
pub fn theta_max(n: u32) -> Result<f64> {
    require_pair(n)?;
    let nf = n as f64;
    Ok(((nf - 2.0) / (2.0 * nf - 3.0)).sqrt().acos())
}

/// Maximal speed over θ: `V_max = (J/2)(n−1)·√(n(n−1)/(2(2n−3)))`.
pub fn speed_max(n: u32, j: f64) -> Result<f64> {
    require_pair(n)?;
    let nf = n as f64;
    Ok(j / 2.0 * (nf - 1.0) * (nf * (nf - 1.0) / (2.0 * (2.0 * nf - 3.0))).sqrt())
}

/// FS-distance covered after dimensionless duration χ = J·t:
/// `S = (χ/2)·√(n(n−1)sin²θ·[1/2 + (n−3/2)cos²θ])`, i.e. `speed·t`.
///
/// Linear in χ; callers supply χ ≥ 0.
pub fn fs_distance(n: u32, theta: f64, chi: f64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    chi * g_cc_closed(n, theta).sqrt()
}

/// Minimal FS-distance over the same duration, attained at θ = π/2:
/// `S_min = (nχ/2)·√((1/2)(1 − 1/n))`.
pub fn fs_distance_min(n: u32, chi: f64) -> Result<f64> {
    require_pair(n)?;
    let nf = n as f64;
    Ok(nf * chi / 2.0 * (0.5 * (1.0 - 1.0 / nf)).sqrt())
}

/// Minimal transit time `t_min = t·√(2n−3)/(n−1)` — the minimal distance
/// covered at the maximal speed.
///
/// Equals `t` exactly for n = 2 and decreases towards zero as n grows.
pub fn brachistochrone_time(n: u32, t: f64) -> Result<f64> {
    require_pair(n)?;
    if t < 0.0 || !t.is_finite() {
        return Err(Error::NegativeTime { t });
    }
    let nf = n as f64;
    Ok(t * (2.0 * nf - 3.0).sqrt() / (nf - 1.0))
}

/// Metric component of the optimal (minimal-time) state space, attached to
/// dχ_min²: numerically the same `g_χχ` component, carried by the rescaled
/// coordinate χ_min = J·t_min.
pub fn optimal_metric(n: u32, theta: f64) -> Result<f64> {
    require_pair(n)?;
    Ok(g_cc_closed(n, theta))
}

/// Full speed/distance/minimal-time summary at one `(n, θ, J, t)` point.
pub fn brachistochrone_report(n: u32, theta: f64, j: f64, t: f64) -> Result<BrachistochroneReport> {
    require_pair(n)?;
    let v = speed(n, theta, j);
    let chi = j * t;
    let t_min = brachistochrone_time(n, t)?;
    Ok(BrachistochroneReport {
        v,
        v_max: speed_max(n, j)?,
        theta_max: theta_max(n)?,
        s: fs_distance(n, theta, chi),
        s_min: fs_distance_min(n, chi)?,
        t_min,
        chi_min: j * t_min,
    })
}
