//! Euclidean projection onto the non-convex lp quasi-norm ball (0 < p < 1).
//!
//! The projection problem
//!
//! ```text
//! minimize 0.5 ||x - y||^2   s.t.  sum_i |x_i|^p <= gamma
//! ```
//!
//! is solved by an iteratively reweighted scheme: a concave surrogate of the
//! constraint is linearized at the current iterate, giving a weighted l1 ball
//! inside the quasi-norm ball onto which the signal is projected exactly by a
//! sort-based kernel. Two surrogate constructions are available — a local
//! approximation that is exact above a shrinking threshold (`Erbp`) and the
//! classical global smoothing (t + eps)^p (`Irbp`) — running the same outer
//! loop, so their iteration paths are directly comparable.
//!
//! Modules:
//! - [`quasinorm`]: scalar kernels (constraint functional, surrogates,
//!   optimality residuals).
//! - [`weighted_l1`]: exact weighted l1-ball projection with dual extraction.
//! - [`solver`]: the reweighted outer loop with sign/support preprocessing.
//! - [`oracle`]: independent small-instance reference searches.
//! - [`recovery`]: projected gradient descent for lp-constrained least
//!   squares, a 2D Haar transform, and text matrix I/O.

pub mod diagnostics;
pub mod error;
pub mod oracle;
pub mod quasinorm;
pub mod recovery;
pub mod solver;
pub mod weighted_l1;

pub use error::{Error, Result};
pub use oracle::{sphere_search_2d, stationarity_check, OracleResult};
pub use quasinorm::{
    irbp_smooth, lp_norm_p, phi, phi_prime, residuals, ProjectionProblem, ResidualReport,
    SmoothingParams,
};
pub use recovery::{
    compute_relative_error, estimate_step_size, haar2d_forward, haar2d_inverse, pgd_solve, psnr,
    read_matrix_text, write_matrix_text, RecoveryProblem, RecoveryReport,
};
pub use solver::{
    build_subproblem, erbp_solve, irbp_solve, postprocess, preprocess, solve,
    write_trajectory_csv, Algorithm, IterateRecord, Preprocessed, SolveReport, SolveStatus,
    SolverConfig,
};
pub use weighted_l1::{kkt_check, project_weighted_l1, Subproblem, SubproblemSolution};
