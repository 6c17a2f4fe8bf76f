//! Finite-difference eigensolver for `−φ'' − q(x) φ = μ φ`, `φ(±1) = 0`.
//!
//! The operator is discretized with second-order central differences on
//! `n` interior points, giving a symmetric tridiagonal matrix. Eigenvalues
//! come from bisection on the Sturm (LDLᵀ inertia) count, eigenvectors from
//! shifted inverse iteration. Nothing here uses the closed-form spectrum.

use serde::{Deserialize, Serialize};

use crate::branch::{self, ProblemKind};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Default bisection width for oracle eigenvalues.
pub const DEFAULT_EIGEN_TOL: f64 = 1e-11;

/// Largest number of eigenvalues the oracle is asked for.
pub const MAX_EIGENVALUES: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TridiagonalOperator {
    pub n: usize,
    pub h: f64,
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl TridiagonalOperator {
    /// `−d²/dx² − coefficient(x)` on `n` interior points of [−1, 1].
    pub fn from_coefficient<Q>(n: usize, coefficient: Q) -> Result<Self>
    where
        Q: Fn(f64) -> f64,
    {
        if n == 0 {
            return Err(Error::Precondition("need at least one interior point".into()));
        }
        let h = 2.0 / (n + 1) as f64;
        let inv_h2 = 1.0 / (h * h);
        let diag = (1..=n)
            .map(|i| 2.0 * inv_h2 - coefficient(-1.0 + i as f64 * h))
            .collect();
        let offdiag = vec![-inv_h2; n - 1];
        Ok(TridiagonalOperator { n, h, diag, offdiag })
    }

    /// x_i = −1 + i·h, i = 1..n.
    pub fn grid(&self) -> Vec<f64> {
        (1..=self.n).map(|i| -1.0 + i as f64 * self.h).collect()
    }

    /// Number of eigenvalues strictly below `s`.
    pub fn count_below(&self, s: f64) -> usize {
        let guard = 1e-300 * (2.0 / (self.h * self.h));
        let mut count = 0;
        let mut d = self.diag[0] - s;
        for i in 0..self.n {
            if i > 0 {
                let e = self.offdiag[i - 1];
                d = self.diag[i] - s - e * e / d;
            }
            if d == 0.0 {
                d = guard;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..self.n {
            let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < self.n { self.offdiag[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The `(index+1)`-th smallest eigenvalue, bracketed to width `tol`.
    pub fn eigenvalue(&self, index: usize, tol: f64) -> f64 {
        let (mut lo, mut hi) = self.gershgorin_bounds();
        let pad = 1e-12 * hi.abs().max(lo.abs()).max(1.0);
        lo -= pad;
        hi += pad;
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// The linearized operator at (τ, kind).
pub fn discretize(tau: f64, kind: ProblemKind, n: usize) -> Result<TridiagonalOperator> {
    kind.check_tau(tau)?;
    TridiagonalOperator::from_coefficient(n, |x| {
        branch::linearized_coefficient(x, tau, kind).expect("grid point inside [-1, 1]")
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleEigenResult {
    pub mu_values: Vec<f64>,
    pub n: usize,
    pub extrapolated: bool,
}

impl OracleEigenResult {
    /// Smallest gap between consecutive eigenvalues.
    pub fn min_gap(&self) -> f64 {
        self.mu_values
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }
}

/// The `k` smallest eigenvalues of `op`.
pub fn lowest_eigenvalues(op: &TridiagonalOperator, k: usize, tol: f64, exec: Execution) -> Result<OracleEigenResult> {
    if k == 0 || k > op.n || k > MAX_EIGENVALUES {
        return Err(Error::Precondition(format!(
            "k = {k} must lie in 1..={}",
            op.n.min(MAX_EIGENVALUES)
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Precondition("tol must be positive".into()));
    }
    let mu_values = exec.map_range(k, |i| op.eigenvalue(i, tol));
    Ok(OracleEigenResult {
        mu_values,
        n: op.n,
        extrapolated: false,
    })
}

/// (4 μ_{2n+1} − μ_n) / 3.
pub fn richardson(mu_n: f64, mu_2n: f64) -> f64 {
    (4.0 * mu_2n - mu_n) / 3.0
}

/// Richardson-extrapolated eigenvalues from meshes n and 2n+1 (h halved).
pub fn extrapolated_eigenvalues(
    tau: f64,
    kind: ProblemKind,
    n: usize,
    k: usize,
    tol: f64,
    exec: Execution,
) -> Result<OracleEigenResult> {
    let ops = [n, 2 * n + 1]
        .into_iter()
        .map(|m| discretize(tau, kind, m))
        .collect::<Result<Vec<_>>>()?;
    let coarse = lowest_eigenvalues(&ops[0], k, tol, exec)?;
    let fine = lowest_eigenvalues(&ops[1], k, tol, exec)?;
    Ok(OracleEigenResult {
        mu_values: coarse
            .mu_values
            .iter()
            .zip(&fine.mu_values)
            .map(|(&a, &b)| richardson(a, b))
            .collect(),
        n,
        extrapolated: true,
    })
}

/// Unit-norm eigenvector for the eigenvalue nearest `mu`.
///
/// Sign is fixed so the entry at the smallest positive grid abscissa is
/// positive.
pub fn inverse_iteration(op: &TridiagonalOperator, mu: f64, iters: usize) -> Result<Vec<f64>> {
    if iters < 2 {
        return Err(Error::Precondition("inverse iteration needs iters >= 2".into()));
    }
    let xs = op.grid();
    // both parities present in the start vector
    let mut v: Vec<f64> = xs.iter().map(|&x| 1.0 + x + 0.25 * (3.0 * x).sin()).collect();
    normalize(&mut v);
    let mut shift = mu;
    for _ in 0..iters {
        let w = match solve_shifted(op, shift, &v) {
            Some(w) => w,
            None => {
                shift += 1e-10 * mu.abs().max(1.0);
                solve_shifted(op, shift, &v)
                    .ok_or_else(|| Error::Precondition("singular shifted solve".into()))?
            }
        };
        v = w;
        normalize(&mut v);
    }
    let probe = xs
        .iter()
        .position(|&x| x > 1e-14)
        .unwrap_or(op.n - 1);
    if v[probe] < 0.0 {
        v.iter_mut().for_each(|c| *c = -*c);
    }
    Ok(v)
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm > 0.0 && norm.is_finite() {
        v.iter_mut().for_each(|c| *c /= norm);
    }
}

/// Thomas algorithm for (T − shift·I) w = rhs. `None` on a zero pivot or
/// non-finite result.
fn solve_shifted(op: &TridiagonalOperator, shift: f64, rhs: &[f64]) -> Option<Vec<f64>> {
    let n = op.n;
    let mut c_prime = vec![0.0; n];
    let mut d_prime = vec![0.0; n];
    let mut denom = op.diag[0] - shift;
    if denom == 0.0 {
        return None;
    }
    if n > 1 {
        c_prime[0] = op.offdiag[0] / denom;
    }
    d_prime[0] = rhs[0] / denom;
    for i in 1..n {
        let a = op.offdiag[i - 1];
        denom = op.diag[i] - shift - a * c_prime[i - 1];
        if denom == 0.0 {
            return None;
        }
        if i + 1 < n {
            c_prime[i] = op.offdiag[i] / denom;
        }
        d_prime[i] = (rhs[i] - a * d_prime[i - 1]) / denom;
    }
    let mut w = d_prime;
    for i in (0..n - 1).rev() {
        w[i] -= c_prime[i] * w[i + 1];
    }
    if w.iter().all(|c| c.is_finite()) {
        Some(w)
    } else {
        None
    }
}
