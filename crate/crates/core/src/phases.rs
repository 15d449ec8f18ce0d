//! Total, dynamical, geometric, Aharonov–Anandan, and topological phases of
//! the evolving spin ensemble.
//!
//! The overlap of the evolved state with the initial one is the binomial sum
//!
//! ```text
//! Z(χ) = Σ_p C(n,p) sin^{2p}(θ/2) cos^{2(n−p)}(θ/2) · exp(−iχ(n−2p)²/4),
//! ```
//!
//! whose argument is the total phase. Subtracting the dynamical part
//! `γ_dyn = −⟨H⟩t = −(nχ/4)[(n−1)cos²θ + 1]` leaves the geometric phase. For
//! one full cycle (`χ` advancing by 2π, the state returning up to a global
//! phase) the closed-form Aharonov–Anandan phase is
//! `γ_AA = −(nπ/2)(n−1)sin²θ`, and its dynamics-independent part — the
//! topological phase — is `−πn²/2`.
//!
//! Branch policy: principal values come from the two-argument arctangent and
//! live in `(−π, π]`; every closed-vs-numeric comparison is made modulo 2π.
//! When the overlap vanishes the total and geometric phases are reported as
//! undefined ([`crate::Error::PhaseUndefined`]) instead of an arbitrary
//! `arg 0`.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::numerics::{trapezoid, unwrap_phases, winding};
use crate::statevector::{
    build_initial_state, energy_moments, evolve, hamiltonian, overlap, EnsembleParams, N_MAX,
};
use crate::{Error, Result};

/// Below this overlap magnitude the phase is reported as undefined.
pub const OVERLAP_EPS: f64 = 1e-10;

/// Default χ-step count for the cyclic-phase quadrature and winding.
pub const DEFAULT_AA_STEPS: usize = 10_000;

/// Minimum admissible step count for the cyclic-phase oracle.
pub const MIN_AA_STEPS: usize = 1_000;

/// Phases of one `(n, θ, χ)` evaluation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSet {
    /// Total phase `arg⟨ψ_i|ψ(t)⟩`, principal branch `(−π, π]`.
    pub total: f64,
    /// Dynamical phase `−⟨H⟩t`, unbounded and linear in χ.
    pub dynamical: f64,
    /// Geometric phase `total − dynamical` (branch-consistent by
    /// construction).
    pub geometric: f64,
    /// Continuous total phase along a χ-sweep; `None` for isolated point
    /// evaluations, filled by [`phase_sweep`].
    pub unwrapped_total: Option<f64>,
}

/// Cyclic-evolution phases, fixed by `(n, θ)` alone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CyclicPhase {
    /// Aharonov–Anandan geometric phase `−(nπ/2)(n−1)sin²θ`.
    pub aa: f64,
    /// Topological phase `−πn²/2`.
    pub topological: f64,
    /// Cycle length in χ (always 2π; for odd `n` the state returns with the
    /// global phase `e^{−iπ/2}`, which drops out of every mod-2π
    /// comparison).
    pub period_chi: f64,
}

/// Binomial coefficient as a float (exact for every argument the library
/// meets in practice).
fn binomial(n: u32, p: u32) -> f64 {
    let p = p.min(n - p.min(n));
    let mut acc = 1.0;
    for k in 0..p {
        acc = acc * (n - k) as f64 / (k + 1) as f64;
    }
    acc
}

/// The closed-form overlap sum `Z(χ)` above.
///
/// Written with binomial weights `C(n,p) q^p (1−q)^{n−p}`, `q = sin²(θ/2)` —
/// the bounded equivalent of the tan/cos form, safe at both poles.
fn closed_overlap(n: u32, theta: f64, chi: f64) -> Complex64 {
    let q = (theta / 2.0).sin().powi(2);
    let mut z = Complex64::new(0.0, 0.0);
    for p in 0..=n {
        let weight = binomial(n, p) * q.powi(p as i32) * (1.0 - q).powi((n - p) as i32);
        let d = n as f64 - 2.0 * p as f64;
        z += weight * Complex64::new(0.0, -chi * d * d / 4.0).exp();
    }
    z
}

fn check_closed_args(n: u32, theta: f64) -> Result<()> {
    if n < 1 {
        return Err(Error::ParticleCount { n, min: 1, max: u32::MAX });
    }
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::ThetaRange { theta });
    }
    Ok(())
}

/// Total phase from the closed-form overlap sum, principal branch.
///
/// Errors with [`crate::Error::PhaseUndefined`] when the evolved state is
/// orthogonal to the initial one (`|Z| < OVERLAP_EPS`).
pub fn total_phase_closed(n: u32, theta: f64, chi: f64) -> Result<f64> {
    check_closed_args(n, theta)?;
    let z = closed_overlap(n, theta, chi);
    if z.norm() < OVERLAP_EPS {
        return Err(Error::PhaseUndefined { magnitude: z.norm() });
    }
    Ok(z.arg())
}

/// Total phase from the statevector oracle: `arg⟨ψ_i|ψ(t)⟩`.
pub fn total_phase_numeric(params: &EnsembleParams, t: f64) -> Result<f64> {
    let psi0 = build_initial_state(params)?;
    let z = overlap(&psi0, &evolve(&psi0, params.j, t))?;
    if z.norm() < OVERLAP_EPS {
        return Err(Error::PhaseUndefined { magnitude: z.norm() });
    }
    Ok(z.arg())
}

/// Dynamical phase `γ_dyn = −(nχ/4)[(n−1)cos²θ + 1]`, i.e. `−⟨H⟩t` with the
/// energy expectation of the coherent state. Linear in χ.
pub fn dynamical_phase(n: u32, theta: f64, chi: f64) -> f64 {
    let nf = n as f64;
    let c2 = theta.cos().powi(2);
    -(nf * chi / 4.0) * ((nf - 1.0) * c2 + 1.0)
}

/// Geometric phase `γ_g = γ_tot − γ_dyn` with the principal-branch total.
///
/// The returned value is branch-consistent (`total − dynamical − geometric`
/// is exactly zero); reduce modulo 2π for display, or use [`phase_sweep`]
/// for a χ-continuous version.
pub fn geometric_phase(n: u32, theta: f64, chi: f64) -> Result<f64> {
    Ok(total_phase_closed(n, theta, chi)? - dynamical_phase(n, theta, chi))
}

/// All phases of one evaluation point.
pub fn phase_set(n: u32, theta: f64, chi: f64) -> Result<PhaseSet> {
    let total = total_phase_closed(n, theta, chi)?;
    let dynamical = dynamical_phase(n, theta, chi);
    Ok(PhaseSet { total, dynamical, geometric: total - dynamical, unwrapped_total: None })
}

/// Phases along an ordered χ-sweep, with the total phase additionally
/// unwrapped into a continuous curve by nearest-branch continuation.
///
/// The sweep must be densely sampled for the continuation to pick the right
/// branch; principal values remain the canonical per-point result.
pub fn phase_sweep(n: u32, theta: f64, chis: &[f64]) -> Result<Vec<PhaseSet>> {
    let mut sets = Vec::with_capacity(chis.len());
    for &chi in chis {
        sets.push(phase_set(n, theta, chi)?);
    }
    let totals: Vec<f64> = sets.iter().map(|s| s.total).collect();
    for (set, unwrapped) in sets.iter_mut().zip(unwrap_phases(&totals)) {
        set.unwrapped_total = Some(unwrapped);
    }
    Ok(sets)
}

/// Closed-form Aharonov–Anandan phase `γ_AA = −(nπ/2)(n−1)sin²θ` for one
/// cycle of the evolution.
pub fn aa_phase_closed(n: u32, theta: f64) -> f64 {
    let nf = n as f64;
    -(nf * PI / 2.0) * (nf - 1.0) * theta.sin().powi(2)
}

/// Topological phase `−πn²/2` — the part of the cyclic phase independent of
/// the dynamics (fractional multiple of π for odd `n`, whole multiple for
/// even `n`).
pub fn topological_phase(n: u32) -> f64 {
    let nf = n as f64;
    -PI * nf * nf / 2.0
}

/// Cyclic-phase summary for `(n, θ)`.
pub fn cyclic_phase(n: u32, theta: f64) -> CyclicPhase {
    CyclicPhase {
        aa: aa_phase_closed(n, theta),
        topological: topological_phase(n),
        period_chi: 2.0 * PI,
    }
}

/// Aharonov–Anandan phase from the statevector oracle:
/// the continuous total-phase change over one χ-period plus the dynamical
/// integral `∫⟨H⟩dt`, the latter evaluated as a trapezoid sum of the oracle
/// energy expectation (the identity `i⟨ψ|∂_t ψ⟩ = ⟨H⟩` for this diagonal
/// generator).
///
/// The total-phase winding is tracked by nearest-branch continuation with
/// adaptive bisection wherever an increment is too large to be unambiguous.
/// If the overlap crosses an exact zero along the path, the ±π jump there is
/// resolved arbitrarily — a 2π ambiguity in the winding, invisible to the
/// mod-2π comparisons this oracle exists for. Requires `steps ≥ 1000`.
pub fn aa_phase_numeric(n: u32, theta: f64, steps: usize) -> Result<f64> {
    if !(1..=N_MAX).contains(&n) {
        return Err(Error::ParticleCount { n, min: 1, max: N_MAX });
    }
    if steps < MIN_AA_STEPS {
        return Err(Error::BadStep {
            reason: format!("cyclic-phase oracle needs at least {MIN_AA_STEPS} steps (got {steps})"),
        });
    }
    // Work at J = 1 so t = χ; the cycle is χ ∈ [0, 2π] and J drops out.
    let params = EnsembleParams::new(n, 1.0, theta, 0.0)?;
    let psi0 = build_initial_state(&params)?;
    let h = hamiltonian(n, 1.0)?;
    let total_at = |chi: f64| {
        overlap(&psi0, &evolve(&psi0, 1.0, chi))
            .expect("same dimension by construction")
            .arg()
    };
    let delta_total = winding(&total_at, 0.0, 2.0 * PI, steps, 1.0, 48);
    let mean_energy_at = |chi: f64| {
        energy_moments(&evolve(&psi0, 1.0, chi), &h)
            .expect("same dimension by construction")
            .0
    };
    let dynamical_integral = trapezoid(mean_energy_at, 0.0, 2.0 * PI, steps);
    Ok(delta_total + dynamical_integral)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::mod_2pi_gap;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn total_phase_examples() {
        // Single-term sum: eigenstate picks up exactly e^{−iχ}.
        let g = total_phase_closed(2, 0.0, FRAC_PI_2).unwrap();
        assert!((g + FRAC_PI_2).abs() < 1e-14);
        // No evolution, no phase.
        for n in 1..=5 {
            assert!(total_phase_closed(n, 0.7, 0.0).unwrap().abs() < 1e-14);
        }
        // Orthogonal states: phase undefined.
        assert!(matches!(
            total_phase_closed(2, FRAC_PI_2, PI),
            Err(Error::PhaseUndefined { .. })
        ));
    }

    #[test]
    fn closed_and_numeric_totals_agree() {
        let params = EnsembleParams::new(3, 1.0, 1.1, 0.0).unwrap();
        let closed = total_phase_closed(3, 1.1, 0.8).unwrap();
        let numeric = total_phase_numeric(&params, 0.8).unwrap();
        assert!(mod_2pi_gap(closed, numeric) < 1e-9);
    }

    #[test]
    fn total_phase_is_4pi_periodic_even_n() {
        let a = total_phase_closed(2, 0.3, 0.0).unwrap();
        let b = total_phase_closed(2, 0.3, 4.0 * PI).unwrap();
        assert!(mod_2pi_gap(a, b) < 1e-12);
        assert!(a.abs() < 1e-12);
    }

    #[test]
    fn dynamical_phase_examples() {
        assert!((dynamical_phase(2, FRAC_PI_2, 1.0) + 0.5).abs() < 1e-15);
        assert!(dynamical_phase(4, 0.9, 0.0).abs() < 1e-15);
        assert!((dynamical_phase(2, 0.0, 1.0) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn dynamical_phase_matches_oracle_energy() {
        for n in 1..=6 {
            let theta = 0.2 + 0.4 * n as f64 % PI;
            let params = EnsembleParams::new(n, 2.0, theta, 0.0).unwrap();
            let psi0 = build_initial_state(&params).unwrap();
            let h = hamiltonian(n, 2.0).unwrap();
            let (mean, _) = energy_moments(&psi0, &h).unwrap();
            let chi = 1.3;
            let t = chi / 2.0;
            assert!((dynamical_phase(n, theta, chi) - (-mean * t)).abs() < 1e-12);
        }
    }

    #[test]
    fn geometric_phase_of_eigenstate_vanishes_mod_2pi() {
        for &chi in &[0.5, 1.0, 3.0, 7.0] {
            let g = geometric_phase(2, 0.0, chi).unwrap();
            assert!(mod_2pi_gap(g, 0.0) < 1e-12);
        }
    }

    #[test]
    fn aa_closed_examples() {
        assert!((aa_phase_closed(2, FRAC_PI_2) + PI).abs() < 1e-15);
        assert!(aa_phase_closed(5, 0.0).abs() < 1e-15);
        assert!((aa_phase_closed(4, FRAC_PI_2) + 6.0 * PI).abs() < 1e-15);
    }

    #[test]
    fn topological_examples() {
        assert!((topological_phase(2) + 2.0 * PI).abs() < 1e-15);
        assert!((topological_phase(1) + PI / 2.0).abs() < 1e-15);
        assert!((topological_phase(4) + 8.0 * PI).abs() < 1e-15);
    }

    #[test]
    fn aa_numeric_matches_closed_mod_2pi() {
        for &(n, theta) in &[(2u32, FRAC_PI_2), (3, 0.9), (2, 0.0)] {
            let num = aa_phase_numeric(n, theta, 2000).unwrap();
            let closed = aa_phase_closed(n, theta);
            assert!(
                mod_2pi_gap(num, closed) < 1e-6,
                "n={n} theta={theta}: {num} vs {closed}"
            );
        }
    }

    #[test]
    fn aa_numeric_is_discretization_independent() {
        let coarse = aa_phase_numeric(3, 0.9, 1000).unwrap();
        let fine = aa_phase_numeric(3, 0.9, 10_000).unwrap();
        assert!((coarse - fine).abs() < 1e-6);
        assert!(aa_phase_numeric(3, 0.9, 10).is_err());
    }

    #[test]
    fn sweep_unwraps_total_phase() {
        let chis: Vec<f64> = (0..400).map(|k| 0.02 * k as f64).collect();
        let sets = phase_sweep(2, 0.4, &chis).unwrap();
        // Continuous curve: no increment anywhere near a full branch.
        for pair in sets.windows(2) {
            let a = pair[0].unwrapped_total.unwrap();
            let b = pair[1].unwrapped_total.unwrap();
            assert!((b - a).abs() < 1.0);
        }
        // Unwrapped and principal totals agree modulo 2π.
        for s in &sets {
            assert!(mod_2pi_gap(s.unwrapped_total.unwrap(), s.total) < 1e-12);
        }
    }

    #[test]
    fn cyclic_summary_is_consistent() {
        let c = cyclic_phase(3, 1.2);
        assert!((c.aa - aa_phase_closed(3, 1.2)).abs() < 1e-15);
        assert!((c.topological - topological_phase(3)).abs() < 1e-15);
        assert!((c.period_chi - 2.0 * PI).abs() < 1e-15);
    }
}
