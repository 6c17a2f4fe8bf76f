use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the admissible domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A bracketed root solve found no sign change at the bracket ends.
    #[error("no sign change on bracket [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    Bracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("root solve did not reach tolerance: |f| = {residual} > {tol}")]
    NotConverged { residual: f64, tol: f64 },

    #[error("adaptive quadrature did not converge on [{a}, {b}]")]
    Quadrature { a: f64, b: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
