//! Exact eigenvalues and eigenfunctions of the linearized one-dimensional
//! Gel'fand problems `u'' + λ e^{±u} = 0`, `u(±1) = 0`, together with an
//! independent finite-difference Sturm–Liouville eigensolver used to check
//! them.
//!
//! ```
//! use gelfand::{mu_exact, ProblemKind, RootSolveConfig};
//!
//! let pair = mu_exact(2, 1.0, ProblemKind::PlusExp, &RootSolveConfig::default()).unwrap();
//! assert!(pair.mu > 0.0);
//! ```

// `!(x > 0.0)` style guards are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod branch;
pub mod cli;
pub mod error;
pub mod exec;
pub mod key_ode;
pub mod oracle;
pub mod quadrature;
pub mod roots;
pub mod spectrum;
pub mod verify;

pub use branch::{
    alpha_from_tau, lambda_derivative, lambda_of_tau, solve_tau1, tau1, tau_from_alpha, u_value, BranchPoint,
    ProblemKind, Tau1,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use oracle::{discretize, extrapolated_eigenvalues, OracleEigenResult, TridiagonalOperator};
pub use roots::RootSolveConfig;
pub use spectrum::{eigenfunction, mu_exact, EigenPair, EigenfunctionProfile, Normalization, Parity};
pub use verify::{run_verify, VerifyConfig, VerifyReport};
