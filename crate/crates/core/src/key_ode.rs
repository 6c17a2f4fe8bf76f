//! General-nonlinearity construction of eigenfunctions.
//!
//! For `u'' + λ f(u) = 0` with a known solution u, any solution h(u) of the
//! third-order linear "key" equation
//!
//! ```text
//! 2(F(α) − F(u)) h''' − 3 f(u) h'' + (3 f'(u) + 4μ/λ) h' + 2 f''(u) h = 0
//! ```
//!
//! yields a candidate eigenfunction √h(u(x)) · W(θ(x)) with h(u(x)) θ'(x)
//! constant. This module evaluates the pieces of that construction
//! independently of the closed forms in [`crate::spectrum`], so that the two
//! can be checked against each other.

use crate::branch::{self, ProblemKind};
use crate::error::{Error, Result};
use crate::quadrature;
use crate::spectrum::{self, EigenPair, Parity};

/// f with its first two derivatives and antiderivative F (F(0) = 0).
pub trait Nonlinearity {
    fn f(&self, u: f64) -> f64;
    fn f_prime(&self, u: f64) -> f64;
    fn f_double_prime(&self, u: f64) -> f64;
    fn antiderivative(&self, u: f64) -> f64;
}

/// f(u) = e^{±u} according to the problem kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exponential(pub ProblemKind);

impl Nonlinearity for Exponential {
    fn f(&self, u: f64) -> f64 {
        match self.0 {
            ProblemKind::PlusExp => u.exp(),
            ProblemKind::MinusExp => (-u).exp(),
        }
    }

    fn f_prime(&self, u: f64) -> f64 {
        match self.0 {
            ProblemKind::PlusExp => u.exp(),
            ProblemKind::MinusExp => -(-u).exp(),
        }
    }

    fn f_double_prime(&self, u: f64) -> f64 {
        match self.0 {
            ProblemKind::PlusExp => u.exp(),
            ProblemKind::MinusExp => (-u).exp(),
        }
    }

    fn antiderivative(&self, u: f64) -> f64 {
        match self.0 {
            ProblemKind::PlusExp => u.exp_m1(),
            ProblemKind::MinusExp => -(-u).exp_m1(),
        }
    }
}

/// Which of the three exact key-equation solutions is in use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HFamily {
    /// e^u, μ > 0: h = 2μ/λ + e^α − e^u
    PlusPositive,
    /// e^u, μ < 0: h = 2|μ|/λ − e^α + e^u
    PlusNegative,
    /// e^{−u}: h = 2μ/λ − e^{−α} + e^{−u}
    Minus,
}

/// An exact solution h(u) of the key equation, with its context (α, λ, μ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HSolution {
    pub family: HFamily,
    pub alpha: f64,
    pub lambda: f64,
    pub mu: f64,
}

impl HSolution {
    pub fn new(kind: ProblemKind, tau: f64, mu: f64) -> Result<Self> {
        let family = match kind {
            ProblemKind::PlusExp if mu > 0.0 => HFamily::PlusPositive,
            ProblemKind::PlusExp if mu < 0.0 => HFamily::PlusNegative,
            ProblemKind::MinusExp => HFamily::Minus,
            ProblemKind::PlusExp => {
                return Err(Error::Domain("no h(u) family for mu = 0".into()));
            }
        };
        Ok(HSolution {
            family,
            alpha: branch::alpha_from_tau(tau, kind)?,
            lambda: branch::lambda_of_tau(tau, kind)?,
            mu,
        })
    }

    pub fn h(&self, u: f64) -> f64 {
        let m = 2.0 * self.mu.abs() / self.lambda;
        match self.family {
            HFamily::PlusPositive => m + self.alpha.exp() - u.exp(),
            HFamily::PlusNegative => m - self.alpha.exp() + u.exp(),
            HFamily::Minus => m - (-self.alpha).exp() + (-u).exp(),
        }
    }

    pub fn h_prime(&self, u: f64) -> f64 {
        match self.family {
            HFamily::PlusPositive => -u.exp(),
            HFamily::PlusNegative => u.exp(),
            HFamily::Minus => -(-u).exp(),
        }
    }

    pub fn h2(&self, u: f64) -> f64 {
        match self.family {
            HFamily::PlusPositive => -u.exp(),
            HFamily::PlusNegative => u.exp(),
            HFamily::Minus => (-u).exp(),
        }
    }

    pub fn h3(&self, u: f64) -> f64 {
        match self.family {
            HFamily::PlusPositive => -u.exp(),
            HFamily::PlusNegative => u.exp(),
            HFamily::Minus => -(-u).exp(),
        }
    }
}

/// The four terms of the key equation at u; their sum is the residual.
pub fn key_ode_terms<N: Nonlinearity>(nl: &N, hs: &HSolution, u: f64) -> [f64; 4] {
    let mu_over_lambda = hs.mu / hs.lambda;
    [
        2.0 * (nl.antiderivative(hs.alpha) - nl.antiderivative(u)) * hs.h3(u),
        -3.0 * nl.f(u) * hs.h2(u),
        (3.0 * nl.f_prime(u) + 4.0 * mu_over_lambda) * hs.h_prime(u),
        2.0 * nl.f_double_prime(u) * hs.h(u),
    ]
}

pub fn key_ode_residual<N: Nonlinearity>(nl: &N, hs: &HSolution, u: f64) -> f64 {
    key_ode_terms(nl, hs, u).iter().sum()
}

/// |residual| divided by the sum of the term magnitudes.
pub fn key_ode_relative_residual<N: Nonlinearity>(nl: &N, hs: &HSolution, u: f64) -> f64 {
    let terms = key_ode_terms(nl, hs, u);
    let scale: f64 = terms.iter().map(|t| t.abs()).sum();
    let r: f64 = terms.iter().sum();
    if scale == 0.0 {
        r.abs()
    } else {
        r.abs() / scale
    }
}

/// Unevaluated sum `hi + lo` with about 106 bits of significand.
#[derive(Debug, Clone, Copy)]
struct DoubleDouble(f64, f64);

impl DoubleDouble {
    fn from(x: f64) -> Self {
        DoubleDouble(x, 0.0)
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let s = hi + lo;
        DoubleDouble(s, lo - (s - hi))
    }

    fn add(self, o: Self) -> Self {
        let s = self.0 + o.0;
        let v = s - self.0;
        let e = (self.0 - (s - v)) + (o.0 - v);
        Self::renorm(s, e + self.1 + o.1)
    }

    fn mul(self, o: Self) -> Self {
        let p = self.0 * o.0;
        let e = self.0.mul_add(o.0, -p) + (self.0 * o.1 + self.1 * o.0);
        Self::renorm(p, e)
    }
}

/// ρ = −f(α) h(α) h'(α) + 2 (f'(α) + μ/λ) h(α)².
///
/// The two terms nearly cancel on the μ < 0 branch far past the fold, so
/// the combination is carried out in double-double arithmetic.
pub fn rho_value<N: Nonlinearity>(nl: &N, hs: &HSolution) -> f64 {
    type D = DoubleDouble;
    let a = hs.alpha;
    let h = D::from(hs.h(a));
    let first = D::from(-nl.f(a)).mul(h).mul(D::from(hs.h_prime(a)));
    let coef = D::from(nl.f_prime(a)).add(D::from(hs.mu / hs.lambda));
    let second = D::from(2.0).mul(coef).mul(h).mul(h);
    let r = first.add(second);
    r.0 + r.1
}

/// ρ written in terms of a = √|μ|/τ for the three exact h families.
pub fn rho_closed_form(kind: ProblemKind, tau: f64, mu: f64) -> Result<f64> {
    kind.check_positive_tau(tau)?;
    let t2 = tau * tau;
    let a2 = mu.abs() / t2;
    // 1 − a² with a single rounding of τ² − |μ|
    let gap = tau.mul_add(tau, -mu.abs()) / t2;
    Ok(match kind {
        ProblemKind::PlusExp if mu > 0.0 => a2 * (a2 + 1.0).powi(2) * tau.cosh().powi(6),
        ProblemKind::PlusExp if mu < 0.0 => -a2 * gap.powi(2) * tau.cosh().powi(6),
        ProblemKind::PlusExp => return Err(Error::Domain("rho is not defined for mu = 0".into())),
        ProblemKind::MinusExp => a2 * gap.powi(2) * tau.cos().powi(6),
    })
}

/// How the quadratic term of the first integral is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QuadraticTerm {
    /// 2 (f'(u) + μ/λ) h², consistent with ρ and the x = 0 evaluation.
    #[default]
    Derivative,
    /// 2 (f(u) + μ/λ) h², as literally printed in one place of the source
    /// derivation. Kept for comparison only.
    Literal,
}

/// (F(α) − F(u))(2h''h − h'²) − f(u) h h' + 2(·+ μ/λ) h² − ρ at u = u(x).
pub fn first_integral_residual<N: Nonlinearity>(
    nl: &N,
    hs: &HSolution,
    tau: f64,
    kind: ProblemKind,
    x: f64,
    reading: QuadraticTerm,
) -> Result<f64> {
    let u = branch::u_value(x, tau, kind)?;
    let (h, h1, h2) = (hs.h(u), hs.h_prime(u), hs.h2(u));
    let fq = match reading {
        QuadraticTerm::Derivative => nl.f_prime(u),
        QuadraticTerm::Literal => nl.f(u),
    };
    let lhs = (nl.antiderivative(hs.alpha) - nl.antiderivative(u)) * (2.0 * h2 * h - h1 * h1)
        - nl.f(u) * h * h1
        + 2.0 * (fq + hs.mu / hs.lambda) * h * h;
    Ok(lhs - rho_value(nl, hs))
}

/// √(λ|ρ|/2) ∫₀ˣ dy / h(u(y)) by adaptive quadrature.
pub fn theta_numeric(x: f64, tau: f64, mu: f64, kind: ProblemKind, quad_tol: f64) -> Result<f64> {
    if mu == 0.0 {
        return Err(Error::Domain("theta is undefined for mu = 0".into()));
    }
    if !(x.abs() <= 1.0) {
        return Err(Error::Domain(format!("x = {x} outside [-1, 1]")));
    }
    let nl = Exponential(kind);
    let hs = HSolution::new(kind, tau, mu)?;
    if hs.family == HFamily::PlusNegative {
        let pair = EigenPair { kind, j: 1, tau, mu };
        let half = spectrum::negative_validity_half_width(&pair);
        if !(x.abs() < half) {
            return Err(Error::Domain(format!(
                "x = {x} outside validity interval (-{half}, {half})"
            )));
        }
    }
    let rho = rho_value(&nl, &hs);
    let scale = (hs.lambda * rho.abs() / 2.0).sqrt();
    let integral = quadrature::integrate(
        |y| match branch::u_value(y, tau, kind) {
            Ok(u) => 1.0 / hs.h(u),
            Err(_) => f64::NAN,
        },
        0.0,
        x,
        quad_tol / scale.max(1.0),
    )?;
    Ok(scale * integral)
}

/// √h(u(x)) · W(θ(x)), with W = sin / cos / cosh by parity and sign of μ.
///
/// Agrees with [`spectrum::raw_eigenfunction`] up to one multiplicative
/// constant. For μ < 0 the construction is only valid on the interval where
/// h(u(x)) > 0.
pub fn assemble_candidate(x: f64, tau: f64, mu: f64, kind: ProblemKind, parity: Parity) -> Result<f64> {
    let hs = HSolution::new(kind, tau, mu)?;
    let u = branch::u_value(x, tau, kind)?;
    let pair = EigenPair { kind, j: 1, tau, mu };
    let theta = spectrum::phase_theta(x, &pair)?;
    let h = hs.h(u);
    if !(h > 0.0) {
        return Err(Error::Domain(format!("h(u(x)) = {h} is not positive at x = {x}")));
    }
    let w = if mu < 0.0 {
        theta.cosh()
    } else {
        match parity {
            Parity::Odd => theta.sin(),
            Parity::Even => theta.cos(),
        }
    };
    Ok(h.sqrt() * w)
}

/// u_τ(x, τ₁)/2 = tanh τ₁ − x tanh(τ₁ x), the null eigenfunction at the fold.
pub fn mu_zero_eigenfunction(tau1: f64, x: f64) -> Result<f64> {
    if !(x.abs() <= 1.0) {
        return Err(Error::Domain(format!("x = {x} outside [-1, 1]")));
    }
    Ok(tau1.tanh() - x * (tau1 * x).tanh())
}
