//! Small numerical toolbox shared by the oracle routes: central differences,
//! Richardson extrapolation, golden-section line search, composite trapezoid
//! quadrature, and phase-unwrapping helpers.
//!
//! Everything here is deliberately plain `f64` scalar code: the quantities it
//! differentiates and integrates are smooth closed forms, so textbook
//! formulas at well-chosen steps reach the tolerances the cross-validation
//! suite pins down.

use std::f64::consts::PI;

/// Golden ratio minus one, the section factor of the golden search.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Central difference `(f(x+h) − f(x−h)) / 2h`, truncation error `O(h²)`.
pub fn central_diff(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Richardson-extrapolated central difference: combines steps `h` and `h/2`
/// to cancel the leading `O(h²)` truncation term, leaving `O(h⁴)`.
pub fn central_diff_richardson(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let coarse = central_diff(&f, x, h);
    let fine = central_diff(&f, x, h / 2.0);
    (4.0 * fine - coarse) / 3.0
}

/// Golden-section search for the minimum of a unimodal `f` on `[a, b]`.
///
/// Returns the abscissa of the minimum to within `tol`. The caller is
/// responsible for unimodality; on non-unimodal input the result is some
/// local minimum of the bracketed region.
pub fn golden_min(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (mut lo, mut hi) = if a < b { (a, b) } else { (b, a) };
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
pub fn golden_max(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    golden_min(|x| -f(x), a, b, tol)
}

/// Composite trapezoid rule for `∫_a^b f` with `steps` uniform panels.
///
/// For smooth periodic integrands over a full period the trapezoid rule
/// converges spectrally, which is why the cyclic-phase oracle uses it.
pub fn trapezoid(f: impl Fn(f64) -> f64, a: f64, b: f64, steps: usize) -> f64 {
    assert!(steps >= 1, "trapezoid needs at least one panel");
    let h = (b - a) / steps as f64;
    let mut sum = 0.5 * (f(a) + f(b));
    for k in 1..steps {
        sum += f(a + h * k as f64);
    }
    sum * h
}

/// Reduce an angle to the principal branch `(−π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    let mut y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y -= 2.0 * PI;
    }
    y
}

/// Distance of `a − b` from the nearest multiple of 2π.
///
/// This is the metric used by every "agrees modulo 2π" comparison: it is zero
/// exactly when the two angles name the same point on the circle.
pub fn mod_2pi_gap(a: f64, b: f64) -> f64 {
    wrap_angle(a - b).abs()
}

/// Unwrap a sweep of principal-branch phases into a continuous curve by
/// nearest-branch continuation: each increment is branch-shifted into
/// `(−π, π]` and accumulated.
///
/// The input must be densely sampled relative to how fast the underlying
/// phase moves; increments near π are ambiguous and resolved toward the
/// smaller jump.
pub fn unwrap_phases(wrapped: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(wrapped.len());
    let mut prev_wrapped = match wrapped.first() {
        Some(&w) => w,
        None => return out,
    };
    let mut running = prev_wrapped;
    out.push(running);
    for &w in &wrapped[1..] {
        running += wrap_angle(w - prev_wrapped);
        prev_wrapped = w;
        out.push(running);
    }
    out
}

/// Total winding of a phase along a parameter interval, with adaptive
/// refinement.
///
/// `phase(x)` must return a principal-branch angle. The interval `[a, b]` is
/// first sampled at `steps + 1` uniform points; wherever one increment
/// exceeds `max_jump` (i.e. the branch continuation becomes ambiguous) the
/// subinterval is bisected recursively, up to `depth` levels, until every
/// increment is small. Returns the continuous phase change `φ(b) − φ(a)`
/// including full windings.
pub fn winding(
    phase: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    steps: usize,
    max_jump: f64,
    depth: u32,
) -> f64 {
    assert!(steps >= 1);
    let h = (b - a) / steps as f64;
    let mut total = 0.0;
    let mut x_prev = a;
    let mut p_prev = phase(a);
    for k in 1..=steps {
        let x = a + h * k as f64;
        let p = phase(x);
        total += increment(phase, x_prev, p_prev, x, p, max_jump, depth);
        x_prev = x;
        p_prev = p;
    }
    total
}

/// One nearest-branch increment, bisecting while it exceeds `max_jump`.
fn increment(
    phase: &impl Fn(f64) -> f64,
    x0: f64,
    p0: f64,
    x1: f64,
    p1: f64,
    max_jump: f64,
    depth: u32,
) -> f64 {
    let step = wrap_angle(p1 - p0);
    if step.abs() <= max_jump || depth == 0 {
        return step;
    }
    let xm = 0.5 * (x0 + x1);
    let pm = phase(xm);
    increment(phase, x0, p0, xm, pm, max_jump, depth - 1)
        + increment(phase, xm, pm, x1, p1, max_jump, depth - 1)
}

/// Uniform grid of `count ≥ 2` points from `start` to `stop` inclusive.
/// Both endpoints are exact: the accumulated step must never overshoot a
/// domain boundary (e.g. θ = π) by a rounding error.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2, "linspace needs at least two points");
    let h = (stop - start) / (count - 1) as f64;
    (0..count)
        .map(|k| if k == count - 1 { stop } else { start + h * k as f64 })
        .collect()
}

/// Root of `f` on `[lo, hi]` by bisection, to within `tol`. Returns `None`
/// unless the endpoint values bracket a sign change (an endpoint that is
/// exactly zero counts as the root).
pub fn bisect_root(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Option<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let (mut flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        if fmid == 0.0 {
            return Some(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}
