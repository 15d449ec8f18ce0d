//! Exact `2^n`-dimensional statevector oracle for the uniformly coupled
//! spin-1/2 ensemble.
//!
//! The Hamiltonian `H = J (Σ_i S_z^i)²` is diagonal in the computational
//! basis with eigenvalues `J (n − 2p)² / 4`, where `p` is the number of down
//! spins of the basis state. Basis convention: index `b ∈ [0, 2^n)`, bit `i`
//! of `b` is spin `i`, bit value 0 ↔ `m_i = +1/2`, so `p(b) = popcount(b)`.
//! ħ = 1 throughout.
//!
//! Everything in this module is brute force on dense amplitude vectors so it
//! can serve as the independent ground truth for the closed-form modules:
//! no formula implemented elsewhere is reused here.

use num_complex::Complex64;

use crate::{Error, Result};

/// Largest particle count the dense oracle accepts (`2^24` complex
/// amplitudes ≈ 256 MB); the closed-form modules carry no such bound.
pub const N_MAX: u32 = 24;

/// Tolerance on `Σ|amplitude|² − 1` for a vector to count as normalized.
pub const NORM_TOL: f64 = 1e-12;

/// Default central-difference step for the θ and φ tangent vectors.
pub const TANGENT_STEP: f64 = 1e-5;

/// Parameters of the spin-coherent initial state and the coupling.
///
/// `theta`/`phi` are the polar and azimuthal angles of the single-spin
/// direction; every spin points the same way, so the initial state is the
/// `n`-fold product state. `phi` enters only through the phase `e^{ipφ}` and
/// is therefore accepted as any finite real.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleParams {
    /// Particle count, `1 ≤ n ≤ N_MAX` for oracle operations.
    pub n: u32,
    /// Ising coupling constant `J` (inverse time, ħ = 1).
    pub j: f64,
    /// Polar angle θ ∈ [0, π].
    pub theta: f64,
    /// Azimuthal angle φ.
    pub phi: f64,
}

impl EnsembleParams {
    /// Bundle the parameters after validating the oracle's domain:
    /// `1 ≤ n ≤ N_MAX` and `θ ∈ [0, π]`. Out-of-range θ is an error, never a
    /// silent clamp.
    pub fn new(n: u32, j: f64, theta: f64, phi: f64) -> Result<Self> {
        check_n(n)?;
        check_theta(theta)?;
        if !j.is_finite() || !phi.is_finite() {
            return Err(Error::BadStep {
                reason: format!("non-finite coupling or azimuth (J = {j}, phi = {phi})"),
            });
        }
        Ok(Self { n, j, theta, phi })
    }
}

/// Validate the oracle particle-count bound.
fn check_n(n: u32) -> Result<()> {
    if !(1..=N_MAX).contains(&n) {
        return Err(Error::ParticleCount { n, min: 1, max: N_MAX });
    }
    Ok(())
}

/// Validate θ ∈ [0, π].
fn check_theta(theta: f64) -> Result<()> {
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::ThetaRange { theta });
    }
    Ok(())
}

/// Dense state of `n` spins: `2^n` complex amplitudes over the computational
/// basis.
///
/// States produced by the oracle are normalized; the same container also
/// carries the *unnormalized* tangent vectors returned by
/// [`parametric_derivative`], so normalization is checked by the
/// [`StateVector::normalized`] constructor rather than on every value.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: u32,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wrap amplitudes as a physical state, checking the dimension is `2^n`
    /// and the norm is 1 within [`NORM_TOL`].
    pub fn normalized(n: u32, amplitudes: Vec<Complex64>) -> Result<Self> {
        let v = Self::raw(n, amplitudes)?;
        let norm_sq = v.norm_sq();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(v)
    }

    /// Wrap amplitudes without a norm check (tangent vectors, intermediate
    /// arithmetic). Only the dimension is validated.
    pub fn raw(n: u32, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_n(n)?;
        if amplitudes.len() != 1usize << n {
            return Err(Error::BadDimension { n, len: amplitudes.len() });
        }
        Ok(Self { n, amplitudes })
    }

    /// Particle count.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Amplitudes in basis order.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `Σ |amplitude|²`.
    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Diagonal of the Hamiltonian over the computational basis:
/// `entry(b) = J (n − 2 p(b))² / 4`.
///
/// Entries depend on `b` only through `popcount(b)`, so the number of
/// distinct energies is `⌊n/2⌋ + 1` for even `n` and `(n+1)/2` for odd `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalHamiltonian {
    n: u32,
    entries: Vec<f64>,
}

impl DiagonalHamiltonian {
    /// Particle count.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Diagonal energies in basis order.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}

/// The dimensionless level `(n − 2p)² / 4` multiplying `J` (and, under
/// evolution, χ) for a state with `p` down spins.
#[inline]
fn level(n: u32, p: u32) -> f64 {
    let d = n as f64 - 2.0 * p as f64;
    d * d / 4.0
}

/// Build the diagonal Hamiltonian for `n` spins with coupling `J`.
pub fn hamiltonian(n: u32, j: f64) -> Result<DiagonalHamiltonian> {
    check_n(n)?;
    let dim = 1usize << n;
    // One value per down-spin count; fan out over the basis by popcount.
    let by_p: Vec<f64> = (0..=n).map(|p| j * level(n, p)).collect();
    let entries = (0..dim).map(|b| by_p[b.count_ones() as usize]).collect();
    Ok(DiagonalHamiltonian { n, entries })
}

/// Build the spin-coherent product initial state:
/// `amplitude(b) = cos^{n−p}(θ/2) · sin^p(θ/2) · e^{ipφ}` with
/// `p = popcount(b)`.
pub fn build_initial_state(params: &EnsembleParams) -> Result<StateVector> {
    let EnsembleParams { n, theta, phi, .. } = EnsembleParams::new(
        params.n, params.j, params.theta, params.phi,
    )?;
    let (half_sin, half_cos) = (theta / 2.0).sin_cos();
    // Amplitude by down-spin count, then fan out over the basis.
    let by_p: Vec<Complex64> = (0..=n)
        .map(|p| {
            let magnitude = half_cos.powi((n - p) as i32) * half_sin.powi(p as i32);
            magnitude * Complex64::new(0.0, p as f64 * phi).exp()
        })
        .collect();
    let dim = 1usize << n;
    let amplitudes = (0..dim).map(|b| by_p[b.count_ones() as usize]).collect();
    let mut state = StateVector::raw(n, amplitudes)?;
    // The target is exactly unit-norm; the power products above accumulate
    // O(n·ε) rounding (≈1e-10 at n = 24), so rescale rather than reject.
    let scale = 1.0 / state.norm_sq().sqrt();
    for a in &mut state.amplitudes {
        *a *= scale;
    }
    Ok(state)
}

/// Apply the diagonal evolution operator `exp(−iHt)`:
/// each amplitude picks up the phase `exp(−i χ (n − 2p)² / 4)` with
/// `χ = J·t`. Norm is preserved exactly; `t = 0` is the identity.
pub fn evolve(state: &StateVector, j: f64, t: f64) -> StateVector {
    let chi = j * t;
    let n = state.n;
    let by_p: Vec<Complex64> = (0..=n)
        .map(|p| Complex64::new(0.0, -chi * level(n, p)).exp())
        .collect();
    let amplitudes = state
        .amplitudes
        .iter()
        .enumerate()
        .map(|(b, a)| a * by_p[b.count_ones() as usize])
        .collect();
    StateVector { n, amplitudes }
}

/// Inner product `⟨a|b⟩ = Σ conj(a_k) b_k`.
pub fn overlap(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    if a.amplitudes.len() != b.amplitudes.len() {
        return Err(Error::DimensionMismatch {
            left: a.amplitudes.len(),
            right: b.amplitudes.len(),
        });
    }
    Ok(a.amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// First and second moments of the energy in `state`:
/// `(⟨H⟩, ⟨H²⟩)`. Both are invariant under [`evolve`] because `H` is
/// diagonal.
pub fn energy_moments(state: &StateVector, h: &DiagonalHamiltonian) -> Result<(f64, f64)> {
    if state.amplitudes.len() != h.entries.len() {
        return Err(Error::DimensionMismatch {
            left: state.amplitudes.len(),
            right: h.entries.len(),
        });
    }
    let mut mean = 0.0;
    let mut second = 0.0;
    for (a, &e) in state.amplitudes.iter().zip(&h.entries) {
        let w = a.norm_sqr();
        mean += w * e;
        second += w * e * e;
    }
    Ok((mean, second))
}

/// Pauli expectation values `(⟨σ_x⟩, ⟨σ_y⟩, ⟨σ_z⟩)` of one site's reduced
/// state, computed by tracing the full density matrix over the other spins.
pub fn reduced_bloch_vector(state: &StateVector, site: u32) -> Result<[f64; 3]> {
    let n = state.n;
    if site >= n {
        return Err(Error::SiteRange { site, n });
    }
    let mask = 1usize << site;
    // Reduced 2×2 density matrix entries: ρ_00, ρ_11 real, ρ_01 complex.
    let mut rho00 = 0.0;
    let mut rho11 = 0.0;
    let mut rho01 = Complex64::new(0.0, 0.0);
    for (b, a) in state.amplitudes.iter().enumerate() {
        if b & mask == 0 {
            rho00 += a.norm_sqr();
            rho01 += a * state.amplitudes[b | mask].conj();
        } else {
            rho11 += a.norm_sqr();
        }
    }
    Ok([2.0 * rho01.re, -2.0 * rho01.im, rho00 - rho11])
}

/// Which parameter a tangent vector differentiates along.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    /// Polar angle θ (central difference).
    Theta,
    /// Azimuthal angle φ (central difference).
    Phi,
    /// Evolution parameter χ = J·t (exact diagonal action).
    Chi,
}

/// Unnormalized tangent vector `∂|ψ(θ, φ, χ)⟩/∂ζ` of the *evolved* state at
/// time `t`.
///
/// θ and φ tangents use central differences with the given `step`
/// (truncation error `O(step²)`; [`TANGENT_STEP`] is the tuned default). The
/// χ tangent needs no step: the generator is diagonal, so
/// `∂_χ|ψ⟩ = −i (H/J) |ψ⟩` exactly.
pub fn parametric_derivative(
    params: &EnsembleParams,
    t: f64,
    which: Param,
    step: f64,
) -> Result<StateVector> {
    let p = EnsembleParams::new(params.n, params.j, params.theta, params.phi)?;
    let state_at = |theta: f64, phi: f64| -> Result<StateVector> {
        let shifted = EnsembleParams { theta, phi, ..p };
        Ok(evolve(&build_initial_state(&shifted)?, p.j, t))
    };
    match which {
        Param::Chi => {
            let psi = state_at(p.theta, p.phi)?;
            let n = psi.n;
            let amplitudes = psi
                .amplitudes
                .iter()
                .enumerate()
                .map(|(b, a)| {
                    a * Complex64::new(0.0, -level(n, b.count_ones()))
                })
                .collect();
            Ok(StateVector { n, amplitudes })
        }
        Param::Theta | Param::Phi => {
            if !step.is_finite() || step <= 0.0 {
                return Err(Error::BadStep {
                    reason: format!("finite-difference step {step} must be positive"),
                });
            }
            if which == Param::Theta
                && (p.theta - step < 0.0 || p.theta + step > std::f64::consts::PI)
            {
                return Err(Error::StepLeavesDomain { theta: p.theta, step });
            }
            let (plus, minus) = match which {
                Param::Theta => (
                    state_at(p.theta + step, p.phi)?,
                    state_at(p.theta - step, p.phi)?,
                ),
                _ => (
                    state_at(p.theta, p.phi + step)?,
                    state_at(p.theta, p.phi - step)?,
                ),
            };
            let inv = 0.5 / step;
            let amplitudes = plus
                .amplitudes
                .iter()
                .zip(&minus.amplitudes)
                .map(|(a, b)| (a - b) * inv)
                .collect();
            Ok(StateVector { n: p.n, amplitudes })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn params(n: u32, theta: f64) -> EnsembleParams {
        EnsembleParams::new(n, 1.0, theta, 0.0).unwrap()
    }

    #[test]
    fn single_spin_poles_and_equator() {
        // Spin-up eigenstate at the pole.
        let up = build_initial_state(&params(1, 0.0)).unwrap();
        assert!((up.amplitudes()[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(up.amplitudes()[1].norm() < 1e-15);
        // Equal superposition on the equator.
        let eq = build_initial_state(&params(1, FRAC_PI_2)).unwrap();
        let r = 1.0 / 2.0_f64.sqrt();
        assert!((eq.amplitudes()[0].re - r).abs() < 1e-15);
        assert!((eq.amplitudes()[1].re - r).abs() < 1e-15);
    }

    #[test]
    fn two_spin_equator_is_uniform() {
        let s = build_initial_state(&params(2, FRAC_PI_2)).unwrap();
        for a in s.amplitudes() {
            assert!((a - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn hamiltonian_entries_match_level_table() {
        let h2 = hamiltonian(2, 1.0).unwrap();
        assert_eq!(h2.entries(), &[1.0, 0.0, 0.0, 1.0]);
        let h1 = hamiltonian(1, 1.0).unwrap();
        assert_eq!(h1.entries(), &[0.25, 0.25]);
        let h3 = hamiltonian(3, 2.0).unwrap();
        for (b, &e) in h3.entries().iter().enumerate() {
            let p = (b as u32).count_ones();
            let expect = match p {
                0 | 3 => 4.5,
                _ => 0.5,
            };
            assert!((e - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn evolve_flips_sign_on_equator_at_chi_pi() {
        let s = build_initial_state(&params(2, FRAC_PI_2)).unwrap();
        let e = evolve(&s, 1.0, PI);
        let expect = [-0.5, 0.5, 0.5, -0.5];
        for (a, &x) in e.amplitudes().iter().zip(&expect) {
            assert!((a - Complex64::new(x, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn evolve_zero_time_is_identity() {
        let s = build_initial_state(&params(3, 1.1)).unwrap();
        let e = evolve(&s, 1.0, 0.0);
        assert_eq!(s, e);
    }

    #[test]
    fn even_n_period_is_two_pi() {
        let s = build_initial_state(&params(2, 0.8)).unwrap();
        let e = evolve(&s, 1.0, 2.0 * PI);
        for (a, b) in s.amplitudes().iter().zip(e.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn odd_n_period_adds_quarter_turn() {
        // (n − 2p)² ≡ 1 (mod 8) for odd n, so χ = 2π multiplies every
        // amplitude by exp(−iπ/2).
        let s = build_initial_state(&params(3, 0.8)).unwrap();
        let e = evolve(&s, 1.0, 2.0 * PI);
        let phase = Complex64::new(0.0, -FRAC_PI_2).exp();
        for (a, b) in s.amplitudes().iter().zip(e.amplitudes()) {
            assert!((a * phase - b).norm() < 1e-12);
        }
    }

    #[test]
    fn overlap_examples() {
        let s = build_initial_state(&params(2, FRAC_PI_2)).unwrap();
        let z = overlap(&s, &s).unwrap();
        assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        // Orthogonal pair: equator state evolved by χ = π.
        let z = overlap(&s, &evolve(&s, 1.0, PI)).unwrap();
        assert!(z.norm() < 1e-14);
        // Eigenstate: pure phase e^{−iχ}.
        let pole = build_initial_state(&params(2, 0.0)).unwrap();
        let chi = 0.9;
        let z = overlap(&pole, &evolve(&pole, 1.0, chi)).unwrap();
        assert!((z - Complex64::new(0.0, -chi).exp()).norm() < 1e-14);
    }

    #[test]
    fn energy_moments_examples() {
        let h = hamiltonian(2, 1.0).unwrap();
        let eq = build_initial_state(&params(2, FRAC_PI_2)).unwrap();
        let (mean, second) = energy_moments(&eq, &h).unwrap();
        assert!((mean - 0.5).abs() < 1e-14);
        assert!((second - mean * mean - 0.25).abs() < 1e-14);
        let pole = build_initial_state(&params(2, 0.0)).unwrap();
        let (mean, second) = energy_moments(&pole, &h).unwrap();
        assert!((mean - 1.0).abs() < 1e-15);
        assert!((second - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bloch_vector_examples() {
        // Product state polarized along +x.
        let s = build_initial_state(&params(2, FRAC_PI_2)).unwrap();
        let v = reduced_bloch_vector(&s, 0).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-12 && v[1].abs() < 1e-12 && v[2].abs() < 1e-12);
        // Maximal two-spin entanglement at χ = π/2 kills the Bloch vector.
        let e = evolve(&s, 1.0, FRAC_PI_2);
        let v = reduced_bloch_vector(&e, 0).unwrap();
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        assert!(norm < 1e-12);
        // A single qubit stays pure under any diagonal evolution.
        let one = build_initial_state(&params(1, 1.2)).unwrap();
        let v = reduced_bloch_vector(&evolve(&one, 1.0, 2.3), 0).unwrap();
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chi_tangent_is_exact_diagonal_action() {
        let p = params(2, 0.0);
        let d = parametric_derivative(&p, 0.0, Param::Chi, 0.0).unwrap();
        assert!((d.amplitudes()[0] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        for a in &d.amplitudes()[1..] {
            assert!(a.norm() < 1e-15);
        }
    }

    #[test]
    fn phi_tangent_vanishes_at_pole() {
        let p = params(2, 0.0);
        let d = parametric_derivative(&p, 0.0, Param::Phi, TANGENT_STEP).unwrap();
        for a in d.amplitudes() {
            assert!(a.norm() < 1e-12);
        }
    }

    #[test]
    fn theta_tangent_matches_analytic_single_spin() {
        let p = params(1, FRAC_PI_2);
        let d = parametric_derivative(&p, 0.0, Param::Theta, TANGENT_STEP).unwrap();
        // d/dθ (cos θ/2, sin θ/2) = (−sin(θ/2)/2, cos(θ/2)/2) = ∓1/(2√2) at θ = π/2.
        let expect = 0.5 / 2.0_f64.sqrt();
        assert!((d.amplitudes()[0].re + expect).abs() < 1e-9);
        assert!((d.amplitudes()[1].re - expect).abs() < 1e-9);
    }

    #[test]
    fn domain_errors_are_reported() {
        assert!(EnsembleParams::new(0, 1.0, 0.5, 0.0).is_err());
        assert!(EnsembleParams::new(N_MAX + 1, 1.0, 0.5, 0.0).is_err());
        assert!(EnsembleParams::new(2, 1.0, -0.1, 0.0).is_err());
        assert!(EnsembleParams::new(2, 1.0, PI + 0.1, 0.0).is_err());
        let p = params(2, 1e-7);
        assert!(matches!(
            parametric_derivative(&p, 0.0, Param::Theta, TANGENT_STEP),
            Err(Error::StepLeavesDomain { .. })
        ));
    }
}
