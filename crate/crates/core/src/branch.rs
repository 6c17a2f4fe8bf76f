//! Exact solution curves of `u'' + λ e^{±u} = 0`, `u(±1) = 0`.
//!
//! Both curves are parametrized by a single branch parameter τ:
//!
//! | kind       | α = ‖u‖∞       | λ(τ)        | u(x, τ)                       |
//! |------------|----------------|-------------|-------------------------------|
//! | `PlusExp`  | 2 log cosh τ   | 2τ²/cosh²τ  | 2 log(cosh τ / cosh τx)       |
//! | `MinusExp` | −2 log cos τ   | 2τ²/cos²τ   | 2 log(cos τx / cos τ)         |
//!
//! `PlusExp` admits every τ ≥ 0 and folds back once at τ₁ (τ₁ tanh τ₁ = 1);
//! `MinusExp` admits τ ∈ [0, π/2) and is monotone.

use std::f64::consts::{FRAC_PI_2, LN_2};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible τ for [`ProblemKind::MinusExp`]; keeps cos τ > 0.
pub const MINUS_TAU_MAX: f64 = FRAC_PI_2 - 1e-12;

/// Above this τ, λ(τ) is evaluated in log space.
const LOG_SPACE_TAU: f64 = 350.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProblemKind {
    /// f(u) = e^u
    #[serde(rename = "plus")]
    PlusExp,
    /// f(u) = e^{−u}
    #[serde(rename = "minus")]
    MinusExp,
}

impl ProblemKind {
    pub fn tau_max(self) -> f64 {
        match self {
            ProblemKind::PlusExp => f64::INFINITY,
            ProblemKind::MinusExp => MINUS_TAU_MAX,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::PlusExp => "plus",
            ProblemKind::MinusExp => "minus",
        }
    }

    /// Accepts τ ∈ [0, τ_max]; τ = 0 is the trivial solution u ≡ 0.
    pub fn check_tau(self, tau: f64) -> Result<()> {
        if !(tau >= 0.0) || tau > self.tau_max() || tau.is_infinite() {
            return Err(Error::Domain(format!(
                "tau = {tau} outside admissible range [0, {}] for {:?}",
                self.tau_max(),
                self
            )));
        }
        Ok(())
    }

    /// Like [`check_tau`](Self::check_tau) but also rejects τ = 0.
    pub fn check_positive_tau(self, tau: f64) -> Result<()> {
        self.check_tau(tau)?;
        if tau == 0.0 {
            return Err(Error::Domain("tau must be strictly positive".into()));
        }
        Ok(())
    }
}

/// `log cosh z` without overflow for large |z| and without cancellation
/// near zero.
pub fn logcosh(z: f64) -> f64 {
    let a = z.abs();
    if a < 1.0 {
        let sh = (0.5 * a).sinh();
        (2.0 * sh * sh).ln_1p()
    } else {
        a + (-2.0 * a).exp().ln_1p() - LN_2
    }
}

/// `1 / cosh z`, zero once cosh overflows.
fn sech(z: f64) -> f64 {
    let a = z.abs();
    if a > 40.0 {
        2.0 * (-a).exp()
    } else {
        1.0 / a.cosh()
    }
}

/// One point (τ, λ(τ), α) of a solution curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchPoint {
    pub kind: ProblemKind,
    pub tau: f64,
    pub lambda: f64,
    pub alpha: f64,
}

impl BranchPoint {
    pub fn new(tau: f64, kind: ProblemKind) -> Result<Self> {
        Ok(BranchPoint {
            kind,
            tau,
            lambda: lambda_of_tau(tau, kind)?,
            alpha: alpha_from_tau(tau, kind)?,
        })
    }
}

pub fn alpha_from_tau(tau: f64, kind: ProblemKind) -> Result<f64> {
    kind.check_tau(tau)?;
    Ok(match kind {
        ProblemKind::PlusExp => 2.0 * logcosh(tau),
        ProblemKind::MinusExp => -2.0 * tau.cos().ln(),
    })
}

pub fn tau_from_alpha(alpha: f64, kind: ProblemKind) -> Result<f64> {
    if !(alpha >= 0.0) {
        return Err(Error::Domain(format!("alpha = {alpha} must be >= 0")));
    }
    Ok(match kind {
        // arcosh(e^a) = a + log(1 + sqrt(1 − e^{−2a})), a = α/2
        ProblemKind::PlusExp => {
            let a = 0.5 * alpha;
            a + (-(-2.0 * a).exp_m1()).sqrt().ln_1p()
        }
        ProblemKind::MinusExp => alpha.exp_m1().sqrt().atan(),
    })
}

pub fn lambda_of_tau(tau: f64, kind: ProblemKind) -> Result<f64> {
    kind.check_tau(tau)?;
    Ok(match kind {
        ProblemKind::PlusExp if tau > LOG_SPACE_TAU => ln_lambda_plus(tau).exp(),
        ProblemKind::PlusExp => {
            let s = sech(tau);
            2.0 * tau * tau * s * s
        }
        ProblemKind::MinusExp => {
            let c = tau.cos();
            2.0 * tau * tau / (c * c)
        }
    })
}

/// `log λ(τ)` for `PlusExp`, finite for every τ > 0.
pub fn ln_lambda_of_tau(tau: f64, kind: ProblemKind) -> Result<f64> {
    kind.check_positive_tau(tau)?;
    Ok(match kind {
        ProblemKind::PlusExp => ln_lambda_plus(tau),
        ProblemKind::MinusExp => LN_2 + 2.0 * tau.ln() - 2.0 * tau.cos().ln(),
    })
}

fn ln_lambda_plus(tau: f64) -> f64 {
    2.0 * (tau.ln() + 0.5 * LN_2 - logcosh(tau))
}

fn check_x(x: f64) -> Result<()> {
    if !(x.abs() <= 1.0) {
        return Err(Error::Domain(format!("x = {x} outside [-1, 1]")));
    }
    Ok(())
}

pub fn u_value(x: f64, tau: f64, kind: ProblemKind) -> Result<f64> {
    check_x(x)?;
    kind.check_tau(tau)?;
    let v = match kind {
        ProblemKind::PlusExp => 2.0 * (logcosh(tau) - logcosh(tau * x)),
        ProblemKind::MinusExp => 2.0 * ((tau * x).cos().ln() - tau.cos().ln()),
    };
    Ok(v.max(0.0))
}

/// λ e^{±u}, the (positive) magnitude of the linearized potential.
pub fn potential_q(x: f64, tau: f64, kind: ProblemKind) -> Result<f64> {
    check_x(x)?;
    kind.check_tau(tau)?;
    Ok(match kind {
        ProblemKind::PlusExp => {
            let s = sech(tau * x);
            2.0 * tau * tau * s * s
        }
        ProblemKind::MinusExp => {
            let c = (tau * x).cos();
            2.0 * tau * tau / (c * c)
        }
    })
}

/// λ f'(u(x)): the coefficient in `φ'' + λ f'(u) φ = −μ φ`.
///
/// Equals `potential_q` for `PlusExp` and `−potential_q` for `MinusExp`,
/// since f'(u) = −e^{−u} there.
pub fn linearized_coefficient(x: f64, tau: f64, kind: ProblemKind) -> Result<f64> {
    let q = potential_q(x, tau, kind)?;
    Ok(match kind {
        ProblemKind::PlusExp => q,
        ProblemKind::MinusExp => -q,
    })
}

pub fn lambda_derivative(tau: f64, kind: ProblemKind) -> Result<f64> {
    kind.check_tau(tau)?;
    Ok(match kind {
        ProblemKind::PlusExp => {
            let s = sech(tau);
            4.0 * tau * s * s * (1.0 - tau * tau.tanh())
        }
        ProblemKind::MinusExp => {
            let c = tau.cos();
            4.0 * tau * (1.0 + tau * tau.tan()) / (c * c)
        }
    })
}

/// The fold of the `PlusExp` curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tau1 {
    pub value: f64,
    /// `value · tanh(value) − 1`
    pub residual: f64,
}

const TAU1_BRACKET: (f64, f64) = (1.0, 1.5);

fn fold_equation(tau: f64) -> f64 {
    tau * tau.tanh() - 1.0
}

/// Solve τ tanh τ = 1 by bisection on [1, 1.5] followed by Newton polish.
pub fn solve_tau1() -> Tau1 {
    let (mut lo, mut hi) = TAU1_BRACKET;
    assert!(fold_equation(lo) < 0.0 && fold_equation(hi) > 0.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if fold_equation(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut tau = 0.5 * (lo + hi);
    for _ in 0..3 {
        let g = fold_equation(tau);
        let s = sech(tau);
        let dg = tau.tanh() + tau * s * s;
        let next = tau - g / dg;
        if fold_equation(next).abs() >= g.abs() {
            break;
        }
        tau = next;
    }
    Tau1 {
        value: tau,
        residual: fold_equation(tau),
    }
}

/// Cached τ₁.
pub fn tau1() -> f64 {
    static TAU1: OnceLock<f64> = OnceLock::new();
    *TAU1.get_or_init(|| solve_tau1().value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, LN_2};

    fn ulps(a: f64, b: f64) -> u64 {
        (a.to_bits() as i64 - b.to_bits() as i64).unsigned_abs()
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_from_tau(0.0, ProblemKind::PlusExp).unwrap(), 0.0);
        // 2 log cosh 1 = 0.86756174...
        let a = alpha_from_tau(1.0, ProblemKind::PlusExp).unwrap();
        assert!((a - 2.0 * 1.0f64.cosh().ln()).abs() < 1e-15);
        assert!((a - 0.867_561_7).abs() < 1e-7);
        let m = alpha_from_tau(FRAC_PI_4, ProblemKind::MinusExp).unwrap();
        assert!((m - LN_2).abs() < 1e-15);
    }

    #[test]
    fn alpha_domain_errors() {
        assert!(alpha_from_tau(-0.1, ProblemKind::PlusExp).is_err());
        assert!(alpha_from_tau(FRAC_PI_2, ProblemKind::MinusExp).is_err());
        assert!(alpha_from_tau(f64::NAN, ProblemKind::MinusExp).is_err());
        assert!(tau_from_alpha(-1e-3, ProblemKind::PlusExp).is_err());
    }

    #[test]
    fn tau_from_alpha_examples() {
        assert_eq!(tau_from_alpha(0.0, ProblemKind::PlusExp).unwrap(), 0.0);
        let t = tau_from_alpha(4.0f64.ln(), ProblemKind::PlusExp).unwrap();
        assert!((t - (2.0 + 3.0f64.sqrt()).ln()).abs() < 1e-15);
        let a = alpha_from_tau(1.2, ProblemKind::MinusExp).unwrap();
        let back = tau_from_alpha(a, ProblemKind::MinusExp).unwrap();
        assert!(ulps(back, 1.2) <= 8, "{back}");
    }

    #[test]
    fn lambda_examples() {
        let t = 1e-6;
        let r = lambda_of_tau(t, ProblemKind::PlusExp).unwrap() / (2.0 * t * t);
        assert!((r - 1.0).abs() < 1e-11);
        let t1 = tau1();
        let l = lambda_of_tau(t1, ProblemKind::PlusExp).unwrap();
        assert!((l - 0.878_458).abs() < 1e-6, "{l}");
        let m = lambda_of_tau(1.0, ProblemKind::MinusExp).unwrap();
        assert!((m - 2.0 / 1.0f64.cos().powi(2)).abs() < 1e-13);
        assert!((m - 6.851_038).abs() < 1e-6);
    }

    #[test]
    fn lambda_no_overflow_and_log_space() {
        for &t in &[349.0, 351.0, 1e3, 1e6] {
            let l = lambda_of_tau(t, ProblemKind::PlusExp).unwrap();
            assert!(l.is_finite() && l >= 0.0);
            assert!(lambda_derivative(t, ProblemKind::PlusExp).unwrap().is_finite());
            assert!(alpha_from_tau(t, ProblemKind::PlusExp).unwrap().is_finite());
        }
        let ll = ln_lambda_of_tau(400.0, ProblemKind::PlusExp).unwrap();
        assert!(ll < 1e-300f64.ln());
        // continuity across the log-space switch
        let a = lambda_of_tau(LOG_SPACE_TAU, ProblemKind::PlusExp).unwrap();
        let b = ln_lambda_of_tau(LOG_SPACE_TAU, ProblemKind::PlusExp).unwrap().exp();
        assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn u_value_examples() {
        for kind in [ProblemKind::PlusExp, ProblemKind::MinusExp] {
            for &tau in &[0.3, 1.0, 1.5] {
                assert_eq!(u_value(1.0, tau, kind).unwrap(), 0.0);
                assert_eq!(u_value(-1.0, tau, kind).unwrap(), 0.0);
                assert_eq!(
                    u_value(0.0, tau, kind).unwrap(),
                    alpha_from_tau(tau, kind).unwrap()
                );
            }
        }
        let v = u_value(0.5, 1.0, ProblemKind::PlusExp).unwrap();
        let expect = 2.0 * (1.0f64.cosh().ln() - 0.5f64.cosh().ln());
        assert!((v - expect).abs() < 1e-15);
        assert!((v - 0.627_332).abs() < 1e-6);
        assert!(u_value(1.01, 1.0, ProblemKind::PlusExp).is_err());
    }

    #[test]
    fn potential_examples() {
        for kind in [ProblemKind::PlusExp, ProblemKind::MinusExp] {
            assert!((potential_q(0.0, 0.7, kind).unwrap() - 0.98).abs() < 1e-15);
        }
        let q = potential_q(1.0, 1.0, ProblemKind::PlusExp).unwrap();
        assert!((q - 2.0 / 1.0f64.cosh().powi(2)).abs() < 1e-15);
        assert!((q - 0.839_949).abs() < 1e-6);
        assert_eq!(
            linearized_coefficient(0.2, 1.0, ProblemKind::MinusExp).unwrap(),
            -potential_q(0.2, 1.0, ProblemKind::MinusExp).unwrap()
        );
    }

    #[test]
    fn lambda_derivative_sign() {
        let t1 = tau1();
        assert!(lambda_derivative(t1, ProblemKind::PlusExp).unwrap().abs() < 1e-12);
        assert!(lambda_derivative(0.5, ProblemKind::PlusExp).unwrap() > 0.0);
        assert!(lambda_derivative(2.0, ProblemKind::PlusExp).unwrap() < 0.0);
        assert!(lambda_derivative(1.0, ProblemKind::MinusExp).unwrap() > 0.0);
    }

    #[test]
    fn tau1_solution() {
        assert!(fold_equation(1.0) < 0.0 && fold_equation(1.5) > 0.0);
        let t = solve_tau1();
        assert!(t.residual.abs() <= 1e-12);
        assert!((t.value - 1.199_678_64).abs() < 1e-8);
        assert_eq!(t.residual, t.value * t.value.tanh() - 1.0);
    }

    #[test]
    fn logcosh_matches_naive_in_range() {
        for &z in &[-30.0, -2.0, -0.999, 0.5, 1.0, 3.0, 20.0] {
            let naive = f64::cosh(z).ln();
            assert!((logcosh(z) - naive).abs() <= 4.0 * f64::EPSILON * naive.max(1e-300) + 1e-300,
                "z={z}: {} vs {naive}", logcosh(z));
        }
        for z in [-1e-4f64, 1e-8, 3e-3] {
            let series = z * z / 2.0 - z.powi(4) / 12.0 + z.powi(6) / 45.0;
            assert!((logcosh(z) - series).abs() <= 2.0 * f64::EPSILON * series);
        }
        assert_eq!(logcosh(0.0), 0.0);
        assert!((logcosh(1e5) - (1e5 - LN_2)).abs() < 1e-9);
    }
}
