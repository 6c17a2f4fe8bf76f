//! Table builders behind each subcommand.

use crate::branch::{self, ProblemKind};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::roots::RootSolveConfig;
use crate::spectrum::{self, Normalization};
use crate::verify::{self, Status, VerifyConfig};

use super::config::RunConfig;
use super::table::{Cell, Table};

/// Rows (tau, lambda, alpha, lambda_prime) over the τ grid.
pub fn cmd_branch(cfg: &RunConfig, exec: Execution) -> Result<Table> {
    cfg.validate()?;
    let kind = cfg.kind;
    let rows = exec.map(&cfg.taus_with_fold(), |&tau| -> Result<Vec<Cell>> {
        let p = branch::BranchPoint::new(tau, kind)?;
        Ok(vec![
            tau.into(),
            p.lambda.into(),
            p.alpha.into(),
            branch::lambda_derivative(tau, kind)?.into(),
        ])
    });
    let mut table = Table::new(vec!["tau", "lambda", "alpha", "lambda_prime"]);
    for r in rows {
        table.push(r?);
    }
    Ok(table)
}

/// Rows (tau, j, mu, sqrt_abs_mu, bracket_lo, bracket_hi, equation_residual).
pub fn cmd_spectrum(cfg: &RunConfig, exec: Execution) -> Result<Table> {
    cfg.validate()?;
    let root_cfg = RootSolveConfig::default();
    let (kind, lo, hi) = (cfg.kind, cfg.j_lo, cfg.j_hi);
    let blocks = exec.map(&cfg.taus_with_fold(), |&tau| -> Result<Vec<Vec<Cell>>> {
        (lo..=hi)
            .map(|j| {
                let p = spectrum::mu_exact(j, tau, kind, &root_cfg)?;
                let (b_lo, b_hi) = p.mu_bracket();
                Ok(vec![
                    tau.into(),
                    j.into(),
                    p.mu.into(),
                    p.sqrt_abs_mu().into(),
                    b_lo.into(),
                    b_hi.into(),
                    p.equation_residual()?.into(),
                ])
            })
            .collect()
    });
    let mut table = Table::new(vec![
        "tau",
        "j",
        "mu",
        "sqrt_abs_mu",
        "bracket_lo",
        "bracket_hi",
        "equation_residual",
    ]);
    for b in blocks {
        for r in b? {
            table.push(r);
        }
    }
    Ok(table)
}

/// Rows (x, phi_raw, phi_sup_one) on `samples` equally spaced points of
/// [−1, 1], endpoints included.
pub fn cmd_eigenfunction(kind: ProblemKind, j: usize, tau: f64, samples: usize) -> Result<Table> {
    if samples < 2 {
        return Err(Error::Config(format!("samples = {samples} must be >= 2")));
    }
    if j == 0 {
        return Err(Error::Config("j must be >= 1".into()));
    }
    kind.check_positive_tau(tau).map_err(|e| Error::Config(e.to_string()))?;
    let pair = spectrum::mu_exact(j, tau, kind, &RootSolveConfig::default())?;
    let profile = spectrum::eigenfunction(pair, Normalization::SupOne)?;
    let mut table = Table::new(vec!["x", "phi_raw", "phi_sup_one"]);
    for i in 0..samples {
        let x = if i == samples - 1 {
            1.0
        } else {
            -1.0 + 2.0 * i as f64 / (samples - 1) as f64
        };
        table.push(vec![x.into(), profile.raw(x)?.into(), profile.value(x)?.into()]);
    }
    Ok(table)
}

/// Verification report table and whether every check passed.
pub fn cmd_verify(cfg: &RunConfig, mu_offset: f64, exec: Execution) -> Result<(Table, bool)> {
    cfg.validate()?;
    let report = verify::run_verify(&VerifyConfig {
        kind: cfg.kind,
        taus: cfg.taus_with_fold(),
        j_min: cfg.j_lo,
        j_max: cfg.j_hi,
        oracle_n: cfg.oracle_n,
        tol: cfg.tol,
        mu_offset,
        exec,
    })?;
    let mut table = Table::new(vec!["check", "kind", "tau", "j", "measured", "threshold", "status"]);
    for r in &report.rows {
        table.push(vec![
            r.check.into(),
            r.kind.name().into(),
            r.tau.into(),
            r.j.into(),
            r.measured.into(),
            r.threshold.into(),
            r.status.as_str().into(),
        ]);
    }
    let passed = report.rows.iter().all(|r| r.status != Status::Fail);
    Ok((table, passed))
}
