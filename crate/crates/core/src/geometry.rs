//! Fubini–Study metric, Christoffel symbols, and scalar curvature of the
//! spin-ensemble state manifold.
//!
//! In the parameters `(θ, φ, χ)` the metric of the evolving family is
//!
//! ```text
//! g_θθ = n/4
//! g_φφ = (n/4) sin²θ
//! g_χχ = (1/8) n(n−1) sin²θ [1 + (2n−3) cos²θ]
//! g_φχ = (1/4) n(n−1) sin²θ cosθ
//! g_θφ = g_θχ = 0
//! ```
//!
//! all independent of φ and χ. The azimuthal symmetry reduces the effective
//! manifold to the `(θ, χ)` chart whose scalar curvature has the closed form
//! implemented by [`curvature_closed`]. Each analytic expression here is
//! paired with a numeric route: the metric against statevector tangents, the
//! curvature against the Christoffel-based formula evaluated by finite
//! differences.


use crate::numerics::{central_diff, central_diff_richardson};
use crate::statevector::{
    build_initial_state, energy_moments, evolve, hamiltonian, overlap, parametric_derivative,
    EnsembleParams, Param, StateVector, TANGENT_STEP,
};
use crate::{Error, Result};

/// Central-difference step for metric-level derivatives (Christoffel /
/// curvature), balancing `O(h²)` truncation against round-off.
pub const METRIC_STEP: f64 = 1e-4;

/// Closest approach to the poles allowed when finite-differencing
/// statevector tangents in θ.
pub const FD_POLE_MARGIN: f64 = 1e-3;

/// Safe θ-window half-width for the curvature finite-difference stencil.
pub const CURVATURE_MARGIN: f64 = 0.2;

/// Metric of the reduced two-parameter `(θ, χ)` chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metric2 {
    /// θθ component, `n/4`.
    pub g_tt: f64,
    /// χχ component.
    pub g_cc: f64,
    /// θχ component (identically zero for this model).
    pub g_tc: f64,
}

/// Metric of the full three-parameter `(θ, φ, χ)` chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metric3 {
    /// θθ component.
    pub g_tt: f64,
    /// φφ component.
    pub g_pp: f64,
    /// χχ component.
    pub g_cc: f64,
    /// φχ cross component.
    pub g_pc: f64,
    /// θφ component (identically zero).
    pub g_tp: f64,
    /// θχ component (identically zero).
    pub g_tc: f64,
}

/// The two potentially nonzero Christoffel symbols of the `(θ, χ)` chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Christoffel {
    /// `Γ^χ_θθ` — vanishes identically because `g_θθ` is χ-independent.
    pub gamma_c_tt: f64,
    /// `Γ^χ_θχ = ∂_θ g_χχ / (2 g_χχ)`.
    pub gamma_c_tc: f64,
}

/// Validate θ ∈ [0, π].
fn check_theta(theta: f64) -> Result<()> {
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::ThetaRange { theta });
    }
    Ok(())
}

/// Validate n ≥ 1.
fn check_n(n: u32) -> Result<()> {
    if n < 1 {
        return Err(Error::ParticleCount { n, min: 1, max: u32::MAX });
    }
    Ok(())
}

/// `g_χχ(n, θ) = (1/8) n(n−1) sin²θ [1 + (2n−3) cos²θ]`.
///
/// Equals the energy variance `Var(H/J)` of the evolving state, which is how
/// the numeric route computes it exactly. Vanishes at the poles and for
/// `n = 1` (the metric is degenerate there).
#[inline]
pub fn g_cc_closed(n: u32, theta: f64) -> f64 {
    let nf = n as f64;
    let (s, c) = theta.sin_cos();
    0.125 * nf * (nf - 1.0) * s * s * (1.0 + (2.0 * nf - 3.0) * c * c)
}

/// Analytic `∂g_χχ/∂θ`, used by the Christoffel symbol and by extremum
/// searches that need the first-order condition at full precision.
#[inline]
pub fn g_cc_dtheta(n: u32, theta: f64) -> f64 {
    // d/dθ [A s²(1 + k c²)] = 2A·s·c·[1 + k cos 2θ] with k = 2n−3.
    let nf = n as f64;
    let a = 0.125 * nf * (nf - 1.0);
    let (s, c) = theta.sin_cos();
    let k = 2.0 * nf - 3.0;
    2.0 * a * s * c * (1.0 + k * (2.0 * theta).cos())
}

/// Analytic metric of the reduced `(θ, χ)` chart.
pub fn metric_reduced(n: u32, theta: f64) -> Result<Metric2> {
    check_n(n)?;
    check_theta(theta)?;
    Ok(Metric2 {
        g_tt: n as f64 / 4.0,
        g_cc: g_cc_closed(n, theta),
        g_tc: 0.0,
    })
}

/// Analytic metric of the full `(θ, φ, χ)` chart.
///
/// The cross component is the quantum-geometric-tensor value
/// `g_φχ = (1/4) n(n−1) sin²θ cosθ`; it is what the finite-difference route
/// reproduces.
pub fn metric_full(n: u32, theta: f64) -> Result<Metric3> {
    check_n(n)?;
    check_theta(theta)?;
    let nf = n as f64;
    let (s, c) = theta.sin_cos();
    Ok(Metric3 {
        g_tt: nf / 4.0,
        g_pp: 0.25 * nf * s * s,
        g_cc: g_cc_closed(n, theta),
        g_pc: 0.25 * nf * (nf - 1.0) * s * s * c,
        g_tp: 0.0,
        g_tc: 0.0,
    })
}

/// One Fubini–Study component from two tangent vectors and the state:
/// `Re[⟨ψ_α|ψ_β⟩ − ⟨ψ_α|ψ⟩⟨ψ|ψ_β⟩]`.
fn fs_component(psi: &StateVector, ta: &StateVector, tb: &StateVector) -> Result<f64> {
    let ab = overlap(ta, tb)?;
    let a_psi = overlap(ta, psi)?;
    let psi_b = overlap(psi, tb)?;
    Ok((ab - a_psi * psi_b).re)
}

/// Numeric metric of the full chart from statevector tangents.
///
/// θ and φ tangents are central differences with step [`TANGENT_STEP`]; the
/// χχ component is instead computed exactly as the energy variance
/// `Var(H/J)` (the χ tangent is exact, so no differencing error enters
/// anywhere a χ index appears). Requires `θ ∈ [FD_POLE_MARGIN,
/// π − FD_POLE_MARGIN]` so the θ stencil stays inside the domain.
pub fn metric_numeric(params: &EnsembleParams, chi: f64) -> Result<Metric3> {
    let lo = FD_POLE_MARGIN;
    let hi = std::f64::consts::PI - FD_POLE_MARGIN;
    if !(lo..=hi).contains(&params.theta) {
        return Err(Error::ThetaWindow { theta: params.theta, lo, hi });
    }
    let t = chi / params.j;
    let psi = evolve(&build_initial_state(params)?, params.j, t);
    let d_theta = parametric_derivative(params, t, Param::Theta, TANGENT_STEP)?;
    let d_phi = parametric_derivative(params, t, Param::Phi, TANGENT_STEP)?;
    let d_chi = parametric_derivative(params, t, Param::Chi, 0.0)?;
    let h = hamiltonian(params.n, params.j)?;
    let (mean, second) = energy_moments(&psi, &h)?;
    let var_h_over_j = (second - mean * mean) / (params.j * params.j);
    Ok(Metric3 {
        g_tt: fs_component(&psi, &d_theta, &d_theta)?,
        g_pp: fs_component(&psi, &d_phi, &d_phi)?,
        g_cc: var_h_over_j,
        g_pc: fs_component(&psi, &d_phi, &d_chi)?,
        g_tp: fs_component(&psi, &d_theta, &d_phi)?,
        g_tc: fs_component(&psi, &d_theta, &d_chi)?,
    })
}

/// Analytic Christoffel symbols `Γ^χ_θθ` (identically zero) and
/// `Γ^χ_θχ = ∂_θ g_χχ / (2 g_χχ)` of the reduced chart.
///
/// Undefined where the metric degenerates (`θ ∈ {0, π}` or `n < 2`).
pub fn christoffel(n: u32, theta: f64) -> Result<Christoffel> {
    check_theta(theta)?;
    let g_cc = g_cc_closed(n, theta);
    if n < 2 || g_cc <= 0.0 {
        return Err(Error::DegenerateMetric { n, theta });
    }
    Ok(Christoffel {
        gamma_c_tt: 0.0,
        gamma_c_tc: g_cc_dtheta(n, theta) / (2.0 * g_cc),
    })
}

/// Closed-form scalar curvature of the reduced `(θ, χ)` chart:
///
/// ```text
/// R = (16/n) [2 + ((2n−3) sin²θ − 3(n−1)) / ((2n−3) sin²θ − 2(n−1))²]
/// ```
///
/// Depends only on the initial configuration `(n, θ)`, never on χ, and is
/// symmetric about θ = π/2. The expression stays finite at the poles even
/// though the metric itself degenerates there ([`pole_degenerate`] tells the
/// two situations apart); requires `n ≥ 2`.
pub fn curvature_closed(n: u32, theta: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::NeedsPair { n });
    }
    check_theta(theta)?;
    let nf = n as f64;
    let s2 = theta.sin().powi(2);
    let k = (2.0 * nf - 3.0) * s2;
    let denom = k - 2.0 * (nf - 1.0);
    Ok((16.0 / nf) * (2.0 + (k - 3.0 * (nf - 1.0)) / (denom * denom)))
}

/// True when θ sits at a pole, where `g_χχ = 0`: the closed-form curvature
/// still evaluates there but describes a degenerate chart point.
pub fn pole_degenerate(theta: f64) -> bool {
    theta.abs() < 1e-12 || (theta - std::f64::consts::PI).abs() < 1e-12
}

/// Numeric scalar curvature from the Christoffel-based formula
///
/// ```text
/// R = (2/√(g_θθ g_χχ)) [∂_χ(Γ^χ_θθ √(g_χχ/g_θθ)) − ∂_θ(Γ^χ_θχ √(g_χχ/g_θθ))]
/// ```
///
/// evaluated by central finite differences on the *analytic* metric and
/// Christoffel symbols (step [`METRIC_STEP`]; `richardson` upgrades the
/// stencil to fourth order). Nothing depends on χ, so the first bracket term
/// vanishes identically and the derivative reduces to a θ-derivative.
/// Requires `θ ∈ [CURVATURE_MARGIN, π − CURVATURE_MARGIN]`.
pub fn curvature_numeric_with(n: u32, theta: f64, step: f64, richardson: bool) -> Result<f64> {
    if n < 2 {
        return Err(Error::NeedsPair { n });
    }
    let lo = CURVATURE_MARGIN;
    let hi = std::f64::consts::PI - CURVATURE_MARGIN;
    if !(lo..=hi).contains(&theta) {
        return Err(Error::ThetaWindow { theta, lo, hi });
    }
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::BadStep { reason: format!("curvature step {step} must be positive") });
    }
    let g_tt = n as f64 / 4.0;
    // F(θ) = Γ^χ_θχ √(g_χχ/g_θθ); R = −(2/√(g_θθ g_χχ)) F′(θ).
    let f = |th: f64| {
        let gcc = g_cc_closed(n, th);
        (g_cc_dtheta(n, th) / (2.0 * gcc)) * (gcc / g_tt).sqrt()
    };
    let df = if richardson {
        central_diff_richardson(f, theta, step)
    } else {
        central_diff(f, theta, step)
    };
    let g_cc = g_cc_closed(n, theta);
    Ok(-2.0 / (g_tt * g_cc).sqrt() * df)
}

/// [`curvature_numeric_with`] at the default step, plain central stencil.
pub fn curvature_numeric(n: u32, theta: f64) -> Result<f64> {
    curvature_numeric_with(n, theta, METRIC_STEP, false)
}
