//! Asymptotic limits and integral identities along the `PlusExp` curve (and
//! the τ → π/2 limit of `MinusExp`).

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::branch::{self, tau1, ProblemKind};
use crate::error::{Error, Result};
use crate::quadrature;
use crate::roots::RootSolveConfig;
use crate::spectrum::{self, Normalization};

/// A measured sequence against a limiting target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub quantity: String,
    pub tau: Vec<f64>,
    pub measured: Vec<f64>,
    pub target: f64,
    pub deviation: Vec<f64>,
}

impl LimitReport {
    pub fn new(quantity: impl Into<String>, tau: Vec<f64>, measured: Vec<f64>, target: f64) -> Self {
        let deviation = measured.iter().map(|m| (m - target).abs()).collect();
        LimitReport {
            quantity: quantity.into(),
            tau,
            measured,
            target,
            deviation,
        }
    }

    pub fn max_deviation(&self) -> f64 {
        self.deviation.iter().copied().fold(0.0, f64::max)
    }

    /// Deviations strictly decrease along the τ sequence.
    pub fn is_monotone_approach(&self) -> bool {
        self.deviation.windows(2).all(|w| w[1] < w[0])
    }
}

fn check_positive(tau: f64) -> Result<()> {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::Domain(format!("tau = {tau} must be positive and finite")));
    }
    Ok(())
}

/// ∫₋₁¹ λ e^u dx = 2τ (cos(2 arctan e^{−τ}) − cos(2 arctan e^{τ})).
pub fn mass_integral(tau: f64) -> Result<f64> {
    check_positive(tau)?;
    let lo = (2.0 * (-tau).exp().atan()).cos();
    let hi = (2.0 * tau.exp().atan()).cos();
    Ok(2.0 * tau * (lo - hi))
}

/// ∫₋₁¹ √(λ e^u) dx = 2√2 (arctan e^τ − arctan e^{−τ}).
pub fn sqrt_mass_integral(tau: f64) -> Result<f64> {
    check_positive(tau)?;
    Ok(2.0 * SQRT_2 * (tau.exp().atan() - (-tau).exp().atan()))
}

/// Quadrature of λ e^u over [−1, 1].
pub fn mass_integral_quadrature(tau: f64, tol: f64) -> Result<f64> {
    check_positive(tau)?;
    quadrature::integrate(
        |x| branch::potential_q(x, tau, ProblemKind::PlusExp).unwrap_or(f64::NAN),
        -1.0,
        1.0,
        tol,
    )
}

/// Quadrature of √(λ e^u) over [−1, 1].
pub fn sqrt_mass_integral_quadrature(tau: f64, tol: f64) -> Result<f64> {
    check_positive(tau)?;
    quadrature::integrate(
        |x| {
            branch::potential_q(x, tau, ProblemKind::PlusExp)
                .map(f64::sqrt)
                .unwrap_or(f64::NAN)
        },
        -1.0,
        1.0,
        tol,
    )
}

/// φ₁(y/τ)/τ with the unnormalized first eigenfunction past the fold.
pub fn scaled_first_eigenfunction(y: f64, tau: f64) -> Result<f64> {
    if !(tau > tau1()) {
        return Err(Error::Domain(format!("tau = {tau} must exceed the fold")));
    }
    if !(y.abs() <= tau) {
        return Err(Error::Domain(format!("|y| = {} exceeds tau = {tau}", y.abs())));
    }
    let pair = spectrum::mu_exact(1, tau, ProblemKind::PlusExp, &RootSolveConfig::default())?;
    Ok(spectrum::raw_eigenfunction(&pair, (y / tau).clamp(-1.0, 1.0))? / tau)
}

/// Pointwise limit profile of φ_j as τ → ∞ (`PlusExp`, j ≥ 2, x ≠ 0) or
/// τ → π/2 (`MinusExp`, |x| < 1).
pub fn limit_profile(j: usize, x: f64, kind: ProblemKind) -> Result<f64> {
    let jf = j as f64;
    match kind {
        ProblemKind::PlusExp => {
            if j < 2 {
                return Err(Error::Domain("PlusExp limit profile needs j >= 2".into()));
            }
            if !(x.abs() <= 1.0) || x == 0.0 {
                return Err(Error::Domain(format!("x = {x} outside [-1,0) U (0,1]")));
            }
            let shift = if x > 0.0 { jf + 1.0 } else { jf - 1.0 };
            Ok((FRAC_PI_2 * (jf - 1.0) * x + FRAC_PI_2 * shift).sin())
        }
        ProblemKind::MinusExp => {
            if j < 1 {
                return Err(Error::Domain("j must be >= 1".into()));
            }
            if !(x.abs() < 1.0) {
                return Err(Error::Domain(format!("x = {x} outside (-1, 1)")));
            }
            let t = (FRAC_PI_2 * x).tan();
            let amp = ((jf + 1.0).powi(2) + t * t).sqrt();
            Ok(amp * (FRAC_PI_2 * (jf + 1.0) * x - (t / (jf + 1.0)).atan() + FRAC_PI_2 * jf).sin())
        }
    }
}

/// ∫₋₁¹ φ₁(x, τ) g(x) dx with the unnormalized φ₁; tends to π g(0).
pub fn weak_limit_check<G>(tau: f64, test_fn: G, quad_tol: f64) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    if !(tau > tau1()) {
        return Err(Error::Domain(format!("tau = {tau} must exceed the fold")));
    }
    let pair = spectrum::mu_exact(1, tau, ProblemKind::PlusExp, &RootSolveConfig::default())?;
    quadrature::integrate(
        |x| spectrum::raw_eigenfunction(&pair, x).unwrap_or(f64::NAN) * test_fn(x),
        -1.0,
        1.0,
        quad_tol,
    )
}

/// Limits of √μ_j as τ → 0 and as τ → τ_max. The `PlusExp` j = 1 upper
/// target is the −∞ sentinel (μ₁ diverges).
pub fn mu_limit_targets(j: usize, kind: ProblemKind) -> (f64, f64) {
    let jf = j as f64;
    let low = FRAC_PI_2 * jf;
    let high = match kind {
        ProblemKind::PlusExp if j == 1 => f64::NEG_INFINITY,
        ProblemKind::PlusExp => FRAC_PI_2 * (jf - 1.0),
        ProblemKind::MinusExp => FRAC_PI_2 * (jf + 1.0),
    };
    (low, high)
}

/// √μ_j along a τ sequence compared with its large-τ target.
pub fn high_tau_report(j: usize, kind: ProblemKind, taus: &[f64]) -> Result<LimitReport> {
    let cfg = RootSolveConfig::default();
    let measured = taus
        .iter()
        .map(|&t| spectrum::mu_exact(j, t, kind, &cfg).map(|p| p.sqrt_abs_mu()))
        .collect::<Result<Vec<_>>>()?;
    Ok(LimitReport::new(
        format!("sqrt_mu_{j}"),
        taus.to_vec(),
        measured,
        mu_limit_targets(j, kind).1,
    ))
}

/// Weak-limit integrals along a τ sequence against π g(0).
pub fn weak_limit_report<G>(name: &str, taus: &[f64], test_fn: G, quad_tol: f64) -> Result<LimitReport>
where
    G: Fn(f64) -> f64 + Copy,
{
    let measured = taus
        .iter()
        .map(|&t| weak_limit_check(t, test_fn, quad_tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(LimitReport::new(name, taus.to_vec(), measured, PI * test_fn(0.0)))
}

/// sup over |y| ≤ y_max of |φ₁(y/τ)/τ − sech y| on `points` samples.
pub fn sech_limit_deviation(tau: f64, y_max: f64, points: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for i in 0..points {
        let y = -y_max + 2.0 * y_max * i as f64 / (points - 1) as f64;
        let v = scaled_first_eigenfunction(y, tau)?;
        worst = worst.max((v - 1.0 / y.cosh()).abs());
    }
    Ok(worst)
}

/// sup over |x| ∈ [x_min, 1] of |φ_j(x, τ) − φ̄_j(x)| on `points` samples per
/// side, φ_j unnormalized.
pub fn limit_profile_deviation(j: usize, tau: f64, kind: ProblemKind, x_min: f64, points: usize) -> Result<f64> {
    let pair = spectrum::mu_exact(j, tau, kind, &RootSolveConfig::default())?;
    let profile = spectrum::eigenfunction(pair, Normalization::PaperRaw)?;
    let x_max = match kind {
        ProblemKind::PlusExp => 1.0,
        ProblemKind::MinusExp => 1.0 - x_min,
    };
    let mut worst = 0.0f64;
    for i in 0..points {
        let r = x_min + (x_max - x_min) * i as f64 / (points - 1) as f64;
        for x in [r, -r] {
            let d = (profile.value(x)? - limit_profile(j, x, kind)?).abs();
            worst = worst.max(d);
        }
    }
    Ok(worst)
}
