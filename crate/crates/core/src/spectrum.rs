//! Exact eigenvalues and eigenfunctions of the linearized problems
//!
//! ```text
//! φ'' + λ f'(u) φ = −μ φ,   φ(±1) = 0
//! ```
//!
//! at every point of the two solution curves. With c = τ tanh τ (`PlusExp`)
//! or c = τ tan τ (`MinusExp`) and s = √μ, the eigenvalues solve
//!
//! * `PlusExp`:  s + arctan(c/s) = (π/2) j,  s ∈ ((π/2)(j−1), (π/2) j)
//! * `MinusExp`: s − arctan(c/s) = (π/2) j,  s ∈ ((π/2) j, (π/2)(j+1))
//!
//! except for the first `PlusExp` eigenvalue past the fold, which is
//! μ₁ = −s² with tanh s = s / c.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::branch::{tau1, ProblemKind};
use crate::error::{Error, Result};
use crate::quadrature;
use crate::roots::{bisect_newton, RootSolveConfig};

/// Half-width of the τ window around τ₁ in which μ₁ is reported as exactly 0.
pub const FOLD_WINDOW: f64 = 1e-10;

/// Points used to estimate sup|φ| for [`Normalization::SupOne`].
pub const SUP_GRID: usize = 8193;

/// Abscissa used to fix the sign of normalized profiles.
const SIGN_PROBE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub kind: ProblemKind,
    pub j: usize,
    pub tau: f64,
    pub mu: f64,
}

impl EigenPair {
    pub fn sqrt_abs_mu(&self) -> f64 {
        self.mu.abs().sqrt()
    }

    /// Interval (lo, hi) that must contain μ. For μ₁ < 0 the lower end −c²
    /// can be reached in floating point once e^{−2c} drops below ε.
    pub fn mu_bracket(&self) -> (f64, f64) {
        let j = self.j as f64;
        match self.kind {
            ProblemKind::PlusExp if self.j == 1 && self.mu < 0.0 => {
                let c = self.tau * self.tau.tanh();
                (-c * c, 0.0)
            }
            ProblemKind::PlusExp if self.j == 1 && self.mu == 0.0 => (0.0, 0.0),
            ProblemKind::PlusExp => ((FRAC_PI_2 * (j - 1.0)).powi(2), (FRAC_PI_2 * j).powi(2)),
            ProblemKind::MinusExp => ((FRAC_PI_2 * j).powi(2), (FRAC_PI_2 * (j + 1.0)).powi(2)),
        }
    }

    /// Residual of the defining equation at this μ.
    pub fn equation_residual(&self) -> Result<f64> {
        let c = phase_coefficient(self.tau, self.kind)?;
        Ok(if self.mu > 0.0 {
            phase_equation(self.mu.sqrt(), self.j, c, self.kind)
        } else if self.mu < 0.0 {
            negative_equation((-self.mu).sqrt(), c)
        } else {
            c - 1.0
        })
    }

    pub fn parity(&self) -> Parity {
        if self.j % 2 == 1 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// c = τ tanh τ (`PlusExp`) or τ tan τ (`MinusExp`).
pub fn phase_coefficient(tau: f64, kind: ProblemKind) -> Result<f64> {
    kind.check_positive_tau(tau)?;
    Ok(match kind {
        ProblemKind::PlusExp => tau * tau.tanh(),
        ProblemKind::MinusExp => tau * tau.tan(),
    })
}

/// G(s), the monotone phase form of the positive-eigenvalue equation.
///
/// The arctan is rewritten through arctan(c/s) = π/2 − arctan(s/c) when
/// c > s so that no O(1) terms cancel near the bracket ends.
pub fn phase_equation(s: f64, j: usize, c: f64, kind: ProblemKind) -> f64 {
    let j = j as f64;
    match kind {
        ProblemKind::PlusExp if c <= s => s + (c / s).atan() - FRAC_PI_2 * j,
        ProblemKind::PlusExp => s - (s / c).atan() - FRAC_PI_2 * (j - 1.0),
        ProblemKind::MinusExp if c <= s => s - (c / s).atan() - FRAC_PI_2 * j,
        ProblemKind::MinusExp => s + (s / c).atan() - FRAC_PI_2 * (j + 1.0),
    }
}

fn phase_equation_derivative(s: f64, c: f64, kind: ProblemKind) -> f64 {
    let w = c / (s * s + c * c);
    match kind {
        ProblemKind::PlusExp => 1.0 - w,
        ProblemKind::MinusExp => 1.0 + w,
    }
}

/// H(s) = tanh s − s/c.
pub fn negative_equation(s: f64, c: f64) -> f64 {
    s.tanh() - s / c
}

/// √μ_j from the phase equation.
pub fn solve_phase_root(j: usize, c: f64, kind: ProblemKind, cfg: &RootSolveConfig) -> Result<f64> {
    if j == 0 {
        return Err(Error::Precondition("eigenvalue index j must be >= 1".into()));
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::Precondition(format!("phase coefficient c = {c} must be positive")));
    }
    let jf = j as f64;
    let (lo, hi) = match kind {
        ProblemKind::PlusExp => (FRAC_PI_2 * (jf - 1.0), FRAC_PI_2 * jf),
        ProblemKind::MinusExp => (FRAC_PI_2 * jf, FRAC_PI_2 * (jf + 1.0)),
    };
    // G is finite and of the right sign at both bracket ends, except at
    // s = 0 where it vanishes identically.
    let lo = if lo == 0.0 { f64::MIN_POSITIVE } else { lo };
    bisect_newton(
        |s| phase_equation(s, j, c, kind),
        |s| phase_equation_derivative(s, c, kind),
        lo,
        hi,
        cfg,
    )
}

/// √(−μ₁) for `PlusExp` past the fold, i.e. c = τ tanh τ > 1.
pub fn solve_negative_root(c: f64, cfg: &RootSolveConfig) -> Result<f64> {
    if !(c > 1.0) {
        return Err(Error::Precondition(format!(
            "negative first eigenvalue needs c = tau*tanh(tau) > 1, got {c}"
        )));
    }
    let delta = cfg.bracket_epsilon * c;
    bisect_newton(
        |s| negative_equation(s, c),
        |s| {
            let sech = 1.0 / s.cosh();
            sech * sech - 1.0 / c
        },
        delta,
        c,
        cfg,
    )
}

/// The j-th eigenvalue at τ.
pub fn mu_exact(j: usize, tau: f64, kind: ProblemKind, cfg: &RootSolveConfig) -> Result<EigenPair> {
    if j == 0 {
        return Err(Error::Precondition("eigenvalue index j must be >= 1".into()));
    }
    let c = phase_coefficient(tau, kind)?;
    let mu = match kind {
        ProblemKind::PlusExp if j == 1 => {
            let t1 = tau1();
            if (tau - t1).abs() <= FOLD_WINDOW {
                0.0
            } else if tau < t1 {
                solve_phase_root(1, c, kind, cfg)?.powi(2)
            } else {
                -solve_negative_root(c, cfg)?.powi(2)
            }
        }
        _ => solve_phase_root(j, c, kind, cfg)?.powi(2),
    };
    Ok(EigenPair { kind, j, tau, mu })
}

/// The first `count` eigenpairs at τ.
pub fn lowest_exact(count: usize, tau: f64, kind: ProblemKind, cfg: &RootSolveConfig) -> Result<Vec<EigenPair>> {
    (1..=count).map(|j| mu_exact(j, tau, kind, cfg)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Normalization {
    /// The closed-form expressions exactly as written, no rescaling.
    #[default]
    PaperRaw,
    /// max |φ| = 1 on a uniform grid, sign fixed so φ(0⁺) > 0.
    SupOne,
    /// ∫ φ² = 1, sign fixed so φ(0⁺) > 0.
    L2One,
}

/// Immutable evaluator for one eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenfunctionProfile {
    pub pair: EigenPair,
    pub parity: Parity,
    pub normalization: Normalization,
    scale: f64,
}

impl EigenfunctionProfile {
    /// Unnormalized closed-form value.
    pub fn raw(&self, x: f64) -> Result<f64> {
        raw_eigenfunction(&self.pair, x)
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        Ok(self.scale * self.raw(x)?)
    }

    /// Multiplier applied to [`raw`](Self::raw).
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn sample(&self, xs: &[f64]) -> Result<Vec<f64>> {
        xs.iter().map(|&x| self.value(x)).collect()
    }
}

pub fn eigenfunction(pair: EigenPair, normalization: Normalization) -> Result<EigenfunctionProfile> {
    // validates the pair once up front
    raw_eigenfunction(&pair, 0.0)?;
    let scale = match normalization {
        Normalization::PaperRaw => 1.0,
        Normalization::SupOne => {
            let sup = grid_sup(&pair)?;
            sign_at_origin(&pair)? / sup
        }
        Normalization::L2One => {
            let sup = grid_sup(&pair)?;
            let tol = 1e-13 * sup * sup;
            let norm2 = quadrature::integrate(
                |x| raw_eigenfunction(&pair, x).map(|v| v * v).unwrap_or(f64::NAN),
                -1.0,
                1.0,
                tol,
            )?;
            sign_at_origin(&pair)? / norm2.sqrt()
        }
    };
    Ok(EigenfunctionProfile {
        pair,
        parity: pair.parity(),
        normalization,
        scale,
    })
}

fn grid_sup(pair: &EigenPair) -> Result<f64> {
    let mut sup = 0.0f64;
    for i in 0..SUP_GRID {
        let x = -1.0 + 2.0 * i as f64 / (SUP_GRID - 1) as f64;
        sup = sup.max(raw_eigenfunction(pair, x)?.abs());
    }
    if !(sup > 0.0) || !sup.is_finite() {
        return Err(Error::Domain(format!("eigenfunction has no finite nonzero sup ({sup})")));
    }
    Ok(sup)
}

fn sign_at_origin(pair: &EigenPair) -> Result<f64> {
    let v = raw_eigenfunction(pair, SIGN_PROBE)?;
    Ok(if v < 0.0 { -1.0 } else { 1.0 })
}

/// Closed-form eigenfunction value, no normalization.
pub fn raw_eigenfunction(pair: &EigenPair, x: f64) -> Result<f64> {
    if !(x.abs() <= 1.0) {
        return Err(Error::Domain(format!("x = {x} outside [-1, 1]")));
    }
    let EigenPair { kind, j, tau, mu } = *pair;
    kind.check_positive_tau(tau)?;
    let jf = j as f64;
    match kind {
        ProblemKind::PlusExp if mu > 0.0 => {
            let s = mu.sqrt();
            let t = (tau * x).tanh();
            let amp = (mu / (tau * tau) + t * t).sqrt();
            Ok(amp * (s * x + (tau * t / s).atan() + FRAC_PI_2 * jf).sin())
        }
        ProblemKind::PlusExp if mu == 0.0 && j == 1 => Ok(tau.tanh() - x * (tau * x).tanh()),
        ProblemKind::PlusExp if mu < 0.0 && j == 1 => Ok(negative_branch_eigenfunction((-mu).sqrt(), tau, x)),
        ProblemKind::PlusExp => Err(Error::Domain(format!(
            "no eigenfunction for j = {j} with mu = {mu} <= 0"
        ))),
        ProblemKind::MinusExp if mu > 0.0 => {
            let s = mu.sqrt();
            let t = (tau * x).tan();
            let amp = (mu / (tau * tau) + t * t).sqrt();
            Ok(amp * (s * x - (tau * t / s).atan() + FRAC_PI_2 * jf).sin())
        }
        ProblemKind::MinusExp => Err(Error::Domain(format!("MinusExp eigenvalue must be positive, got {mu}"))),
    }
}

/// s cosh(sx) − τ sinh(sx) tanh(τx) for s = √(−μ₁), evaluated without
/// overflow or catastrophic cancellation.
///
/// Written as ½[(s − τ tanh τx) e^{sx} + (s + τ tanh τx) e^{−sx}] at |x|.
/// The first coefficient is split as τ(tanh τ − tanh τx) − (c − s), with
/// c = τ tanh τ and c − s = c(1 − tanh s) taken from the eigenvalue
/// equation; every exponential that multiplies it then has a nonpositive
/// exponent.
fn negative_branch_eigenfunction(s: f64, tau: f64, x: f64) -> f64 {
    let x = x.abs();
    let c = tau * tau.tanh();
    let e2tx = (-2.0 * tau * x).exp();
    let e2t = (-2.0 * tau).exp();
    // τ (tanh τ − tanh τx) e^{sx}
    let edge = 2.0 * tau * ((s - 2.0 * tau) * x).exp() / (1.0 + e2tx) - 2.0 * tau * (s * x - 2.0 * tau).exp() / (1.0 + e2t);
    // (c − s) e^{sx}
    let gap = 2.0 * c * (s * (x - 2.0)).exp() / (1.0 + (-2.0 * s).exp());
    let decaying = (s + tau * (tau * x).tanh()) * (-s * x).exp();
    0.5 * (edge - gap + decaying)
}

/// Closed-form phase θ(x) of the §-style construction φ = √h · W(θ).
///
/// For μ < 0 the closed form only holds on I = {x : |tanh τx| < ā},
/// ā = √(−μ)/τ; outside it a domain error is returned.
pub fn phase_theta(x: f64, pair: &EigenPair) -> Result<f64> {
    let EigenPair { kind, tau, mu, .. } = *pair;
    kind.check_positive_tau(tau)?;
    if mu == 0.0 {
        return Err(Error::Domain("phase is undefined for mu = 0".into()));
    }
    if mu > 0.0 {
        let s = mu.sqrt();
        return Ok(match kind {
            ProblemKind::PlusExp => s * x + (tau * (tau * x).tanh() / s).atan(),
            ProblemKind::MinusExp => s * x - (tau * (tau * x).tan() / s).atan(),
        });
    }
    if kind == ProblemKind::MinusExp {
        return Err(Error::Domain("MinusExp has no negative eigenvalues".into()));
    }
    let a_bar = (-mu).sqrt() / tau;
    let t = (tau * x).tanh();
    if !(t.abs() < a_bar) {
        return Err(Error::Domain(format!(
            "x = {x} outside validity interval |x| < artanh({a_bar})/tau"
        )));
    }
    // ½ log((ā + t)/(ā − t)) = artanh(t/ā)
    let log_term = (t / a_bar).atanh();
    if a_bar > 1.0 {
        Ok(a_bar * tau * x - log_term)
    } else if a_bar < 1.0 {
        Ok(-a_bar * tau * x + log_term)
    } else {
        Err(Error::Domain("a_bar = 1 gives rho = 0; phase undefined".into()))
    }
}

/// Half-width artanh(ā)/τ of the interval on which the μ < 0 phase is
/// defined (infinite when ā ≥ 1).
pub fn negative_validity_half_width(pair: &EigenPair) -> f64 {
    let a_bar = (-pair.mu).sqrt() / pair.tau;
    if a_bar >= 1.0 {
        f64::INFINITY
    } else {
        a_bar.atanh() / pair.tau
    }
}

/// Strict sign changes of `profile` on `grid_size` cell midpoints of (−1, 1).
pub fn zero_crossings(profile: &EigenfunctionProfile, grid_size: usize) -> Result<usize> {
    let need = 64 * profile.pair.j;
    if grid_size < need {
        return Err(Error::Precondition(format!(
            "grid_size = {grid_size} must be >= 64*j = {need}"
        )));
    }
    let dx = 2.0 / grid_size as f64;
    let mut count = 0;
    let mut last = 0.0f64;
    for i in 0..grid_size {
        let x = -1.0 + (i as f64 + 0.5) * dx;
        let v = profile.value(x)?;
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && v.signum() != last.signum() {
            count += 1;
        }
        last = v;
    }
    Ok(count)
}

/// (π/2)·j, the Dirichlet phase target.
pub fn dirichlet_phase(j: usize) -> f64 {
    0.5 * PI * j as f64
}
