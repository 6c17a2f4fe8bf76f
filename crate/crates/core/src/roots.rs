//! Bracketed scalar root finding: bisection followed by one guarded Newton
//! step.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootSolveConfig {
    pub abs_tol: f64,
    pub max_bisections: usize,
    /// Relative inset applied to an open lower bracket end at zero.
    pub bracket_epsilon: f64,
}

impl Default for RootSolveConfig {
    fn default() -> Self {
        RootSolveConfig {
            abs_tol: 1e-13,
            max_bisections: 200,
            bracket_epsilon: 1e-9,
        }
    }
}

impl RootSolveConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::Config(format!("abs_tol = {} must be > 0", self.abs_tol)));
        }
        if !(self.bracket_epsilon > 0.0 && self.bracket_epsilon < 1e-3) {
            return Err(Error::Config(format!(
                "bracket_epsilon = {} must lie in (0, 1e-3)",
                self.bracket_epsilon
            )));
        }
        Ok(())
    }
}

/// Root of `f` on `[lo, hi]`, where `f(lo)` and `f(hi)` have opposite signs.
///
/// Bisects until the bracket collapses to adjacent floats (or
/// `max_bisections`), then tries one Newton step with `df` and keeps it only
/// if it stays inside the bracket and lowers |f|. Fails with
/// [`Error::NotConverged`] if the final |f| exceeds `abs_tol`.
pub fn bisect_newton<F, D>(f: F, df: D, lo: f64, hi: f64, cfg: &RootSolveConfig) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    cfg.validate()?;
    let (mut a, mut b) = (lo, hi);
    let (fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.signum() != fb.signum()) || fa.is_nan() || fb.is_nan() {
        return Err(Error::Bracket { lo, hi, f_lo: fa, f_hi: fb });
    }
    let rising = fa < 0.0;
    for _ in 0..cfg.max_bisections {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == rising {
            a = mid;
        } else {
            b = mid;
        }
    }
    let mut x = 0.5 * (a + b);
    let mut fx = f(x);
    let d = df(x);
    if d != 0.0 && d.is_finite() {
        let y = x - fx / d;
        if y >= lo && y <= hi {
            let fy = f(y);
            if fy.abs() < fx.abs() {
                x = y;
                fx = fy;
            }
        }
    }
    if fx.abs() > cfg.abs_tol {
        return Err(Error::NotConverged { residual: fx.abs(), tol: cfg.abs_tol });
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt2() {
        let r = bisect_newton(|x| x * x - 2.0, |x| 2.0 * x, 0.0, 2.0, &Default::default()).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn decreasing_function() {
        let r = bisect_newton(|x| 1.0 - x, |_| -1.0, 0.0, 3.0, &Default::default()).unwrap();
        assert_eq!(r, 1.0);
    }

    #[test]
    fn missing_sign_change() {
        let e = bisect_newton(|x| x * x + 1.0, |x| 2.0 * x, -1.0, 2.0, &Default::default());
        assert!(matches!(e, Err(Error::Bracket { .. })));
    }

    #[test]
    fn config_validation() {
        let mut cfg = RootSolveConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.bracket_epsilon = 1e-2;
        assert!(cfg.validate().is_err());
        cfg = RootSolveConfig { abs_tol: 0.0, ..Default::default() };
        assert!(cfg.validate().is_err());
    }
}
