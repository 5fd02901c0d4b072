//! Rank-revealing QR factorization in an arbitrary vector norm.
//!
//! [`rrqr_factor`] computes `A·P = Q·R` where each new column of `Q` is the
//! normalized best-approximation residual of the pivot column in the chosen
//! norm, and the pivot is the column whose residual is largest. `R` is upper
//! triangular with a nonincreasing diagonal, so truncating after `k` steps
//! gives a rank-`k` approximation whose quality is tied to that norm. In l²
//! the result coincides with classical column-pivoted QR; in l¹ the inner
//! problems are least-absolute-deviation fits solved by the bundled simplex
//! code.
//!
//! ```
//! use arrqr::{rrqr_factor, reconstruct, DenseMatrix, NormSpec};
//!
//! let a = DenseMatrix::from_rows(&[[1.0, 2.0], [0.0, 1.0]]).unwrap();
//! let f = rrqr_factor(&a, &NormSpec::L1, 0.0, None).unwrap();
//! assert_eq!(f.perm().as_slice(), &[1, 0]);
//! assert_eq!(f.gammas(), &[3.0, 0.5]);
//! let back = reconstruct(&f).unwrap();
//! assert!(back.sub(&a).unwrap().max_abs() < 1e-12);
//! ```

#![allow(clippy::needless_range_loop)]

pub mod analysis;
pub mod csvio;
pub mod error;
pub mod experiment;
pub mod gen;
mod householder;
pub mod lad;
pub mod lp;
pub mod matrix;
pub mod norm;
pub mod rrqr;

pub use analysis::{cond_1, diag_profile, factorization_error, lowrank_error_curve, ConditionReport};
pub use error::{Error, Result};
pub use lad::{encode_l1_as_lp, solve_l1, solve_l1_primal, solve_l2, LeastDeviationSolution};
pub use lp::{solve_lp, LinearProgram, LpSolution, LpStatus, SimplexSolver};
pub use matrix::{induced_1norm, inverse, lu_solve, matmul, permute_cols, unpermute_cols, DenseMatrix, Permutation};
pub use norm::{vec_norm, LeastDeviationNorm, NormSpec};
pub use rrqr::{
    classical_cpqr, reconstruct, rrqr_factor, rrqr_factor_with, truncate, truncate_against, CandidateSearch,
    Factorization, RrqrOptions, TruncationResult,
};
