//! Adaptive Simpson quadrature.

use crate::error::{Error, Result};

pub const DEFAULT_QUAD_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_DEPTH: u32 = 40;

/// Number of equal panels the interval is split into before refinement.
/// Keeps narrow peaks (e.g. φ₁ at large τ) from being stepped over by the
/// first five-point estimate.
const INITIAL_PANELS: usize = 16;

/// ∫ₐᵇ f with absolute error target `tol` and recursion depth cap `max_depth`.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64, max_depth: u32) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    let width = (b - a) / INITIAL_PANELS as f64;
    let panel_tol = tol / INITIAL_PANELS as f64;
    let mut total = 0.0;
    for k in 0..INITIAL_PANELS {
        let lo = a + width * k as f64;
        let hi = if k + 1 == INITIAL_PANELS { b } else { lo + width };
        let (flo, fhi) = (f(lo), f(hi));
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        let whole = simpson(lo, hi, flo, fmid, fhi);
        total += refine(&f, lo, hi, flo, fmid, fhi, whole, panel_tol, max_depth)
            .ok_or(Error::Quadrature { a, b })?;
    }
    Ok(total)
}

/// ∫ₐᵇ f with [`DEFAULT_MAX_DEPTH`].
pub fn integrate<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    adaptive_simpson(f, a, b, tol, DEFAULT_MAX_DEPTH)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Option<f64>
where
    F: Fn(f64) -> f64,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if !delta.is_finite() {
        return None;
    }
    if delta.abs() <= 15.0 * tol || m == a || m == b {
        return Some(left + right + delta / 15.0);
    }
    if depth == 0 {
        return None;
    }
    let l = refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
    let r = refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
    Some(l + r)
}
