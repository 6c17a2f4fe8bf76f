//! Validated run configuration shared by all subcommands.

use serde::Serialize;

use crate::branch::{tau1, ProblemKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TauGrid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl TauGrid {
    pub fn default_for(kind: ProblemKind) -> Self {
        match kind {
            ProblemKind::PlusExp => TauGrid { min: 0.1, max: 10.0, count: 25, spacing: Spacing::Log },
            ProblemKind::MinusExp => TauGrid { min: 0.1, max: 1.5, count: 15, spacing: Spacing::Linear },
        }
    }

    pub fn validate(&self, kind: ProblemKind) -> Result<()> {
        if self.count == 0 {
            return Err(Error::Config("tau grid is empty (count = 0)".into()));
        }
        if !(self.min > 0.0) || !(self.min <= self.max) {
            return Err(Error::Config(format!(
                "tau bounds must satisfy 0 < min <= max, got [{}, {}]",
                self.min, self.max
            )));
        }
        if !(self.max <= kind.tau_max()) {
            return Err(Error::Config(format!(
                "tau max {} exceeds the admissible limit {} for kind {}",
                self.max,
                kind.tau_max(),
                kind.name()
            )));
        }
        if self.count == 1 && self.min != self.max {
            return Err(Error::Config("a single-point grid needs min = max".into()));
        }
        Ok(())
    }

    /// Grid points in increasing order; endpoints are exact.
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i == self.count - 1 {
                    return self.max;
                }
                let t = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.min + (self.max - self.min) * t,
                    Spacing::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * t).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub kind: ProblemKind,
    pub tau_grid: TauGrid,
    pub j_lo: usize,
    pub j_hi: usize,
    pub oracle_n: usize,
    pub tol: f64,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<std::path::PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.tau_grid.validate(self.kind)?;
        if self.j_lo == 0 || self.j_lo > self.j_hi {
            return Err(Error::Config(format!(
                "j range must satisfy 1 <= lo <= hi, got {}..={}",
                self.j_lo, self.j_hi
            )));
        }
        if self.j_hi > crate::oracle::MAX_EIGENVALUES {
            return Err(Error::Config(format!(
                "j max {} exceeds {}",
                self.j_hi,
                crate::oracle::MAX_EIGENVALUES
            )));
        }
        if self.oracle_n < 32 {
            return Err(Error::Config(format!("oracle_n = {} must be >= 32", self.oracle_n)));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Config(format!("tol = {} must be positive", self.tol)));
        }
        Ok(())
    }

    /// τ grid points; for `PlusExp` the fold τ₁ is merged in when it lies
    /// inside the grid bounds.
    pub fn taus_with_fold(&self) -> Vec<f64> {
        let mut taus = self.tau_grid.points();
        let t1 = tau1();
        let inside = self.tau_grid.min <= t1 && t1 <= self.tau_grid.max;
        if self.kind == ProblemKind::PlusExp && inside && !taus.contains(&t1) {
            taus.push(t1);
            taus.sort_by(f64::total_cmp);
        }
        taus
    }
}
