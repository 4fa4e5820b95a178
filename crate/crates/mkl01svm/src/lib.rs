//! Multiple-kernel support vector machine with the (0,1) loss, trained by a
//! working-set ADMM.
//!
//! The classifier combines L Gaussian kernels with simplex-constrained
//! weights and penalizes margin violations by counting them, which makes the
//! training problem nonsmooth and nonconvex. The solver alternates closed-form
//! proximal and projection steps with two small SPD linear solves per sweep,
//! maintains two working sets (one selecting data points, one selecting
//! kernels), and certifies its output against KKT-like first-order conditions.
//!
//! # Quick start
//!
//! ```
//! use mkl01svm::data::{synth_2d, fit_normalizer, apply_normalizer};
//! use mkl01svm::kernels::KernelBank;
//! use mkl01svm::admm::{solve, SolverParams};
//!
//! let raw = synth_2d(40, 7).unwrap();
//! let stats = fit_normalizer(&raw).unwrap();
//! let ds = apply_normalizer(&stats, &raw).unwrap();
//! let bank = KernelBank::build(ds.features(), &[0.5, 1.0, 2.0]).unwrap();
//! let out = solve(&ds, &bank, &SolverParams::default()).unwrap();
//! assert!(out.report.satisfied);
//! ```
//!
//! The `examples/` directory walks through every major capability; the
//! `mkl01svm` binary wires the same functions into `train`, `predict`,
//! `cv`, `bench`, and `synth` subcommands.

pub mod admm;
pub mod cli;
pub mod data;
pub mod kernels;
pub mod model;
pub mod prox01;
pub mod simplex;

pub use admm::{check_p_stationary, solve, SolveOutput, SolverParams, StationarityReport};
pub use data::{Dataset, NormStats};
pub use kernels::KernelBank;
pub use model::Model;
pub use simplex::{project_simplex, SimplexPoint};
