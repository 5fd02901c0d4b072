//! Least-deviation solves: `argmin_c ‖b − A·c‖` in the l¹ and l² norms.
//!
//! The l¹ problem is a linear program. [`encode_l1_as_lp`] builds the
//! textbook form over `(t, x)`:
//!
//! ```text
//!     minimize    Σ tᵢ
//!     subject to  A·x − b ≤ t
//!                 b − A·x ≤ t
//!                 t ≥ 0, x free
//! ```
//!
//! which has `m + n` variables and `2m` rows. [`solve_l1`] instead solves
//! its LP dual,
//!
//! ```text
//!     maximize    bᵀu
//!     subject to  Aᵀ·u = 0
//!                 −1 ≤ u ≤ 1
//! ```
//!
//! whose tableau is only `n × (m + n)`, and reads `x` off the multipliers
//! of the equality rows. Both routes reach the same optimal value; the
//! primal route is kept as [`solve_l1_primal`].

use crate::error::{Error, Result};
use crate::householder::HouseholderQr;
use crate::lp::{LinearProgram, LpStatus, SimplexSolver};
use crate::matrix::DenseMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct LeastDeviationSolution {
    /// Minimizing coefficients `c`; not unique in general for l¹.
    pub coefficients: Vec<f64>,
    /// `b − A·c`.
    pub residual: Vec<f64>,
    pub residual_norm: f64,
}

impl LeastDeviationSolution {
    fn from_coefficients(a: &DenseMatrix, b: &[f64], coefficients: Vec<f64>, norm: fn(&[f64]) -> f64) -> Self {
        let ac = a.mul_vec(&coefficients).expect("coefficient length matches");
        let residual: Vec<f64> = b.iter().zip(&ac).map(|(bi, ai)| bi - ai).collect();
        let residual_norm = norm(&residual);
        Self {
            coefficients,
            residual,
            residual_norm,
        }
    }
}

fn l1(x: &[f64]) -> f64 {
    x.iter().map(|v| v.abs()).sum()
}

fn l2(x: &[f64]) -> f64 {
    x.iter().fold(0.0f64, |acc, v| acc.hypot(*v))
}

fn check_problem(a: &DenseMatrix, b: &[f64]) -> Result<()> {
    if a.rows() != b.len() {
        return Err(Error::Shape(format!(
            "{}x{} matrix with right-hand side of length {}",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    if a.cols() > a.rows() {
        return Err(Error::Shape(format!(
            "least-deviation basis has more columns ({}) than rows ({})",
            a.cols(),
            a.rows()
        )));
    }
    if let Some(i) = b.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { row: i, col: 0 });
    }
    Ok(())
}

/// The `(t, x)` linear program whose optimum is `min_x ‖b − A·x‖₁`.
/// Variables are ordered `t₁…t_m, x₁…x_n`.
pub fn encode_l1_as_lp(a: &DenseMatrix, b: &[f64]) -> Result<LinearProgram> {
    if a.rows() != b.len() {
        return Err(Error::Shape(format!(
            "{}x{} matrix with right-hand side of length {}",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    let (m, n) = a.shape();
    let nvars = m + n;
    let g = DenseMatrix::from_fn(2 * m, nvars, |i, j| {
        let (row, upper_half) = if i < m { (i, true) } else { (i - m, false) };
        if j < m {
            if j == row {
                -1.0
            } else {
                0.0
            }
        } else if upper_half {
            a.get(row, j - m)
        } else {
            -a.get(row, j - m)
        }
    })?;
    let h: Vec<f64> = b.iter().copied().chain(b.iter().map(|v| -v)).collect();
    let mut objective = vec![0.0; nvars];
    objective[..m].fill(1.0);
    let lower = (0..nvars).map(|j| if j < m { 0.0 } else { f64::NEG_INFINITY }).collect();
    LinearProgram::new(objective)?
        .with_inequalities(g, h)?
        .with_bounds(lower, vec![f64::INFINITY; nvars])
}

/// Runs `solve` on `b` scaled to unit l¹ norm and scales the result back.
fn with_unit_rhs(
    a: &DenseMatrix,
    b: &[f64],
    solve: impl FnOnce(&[f64]) -> Result<Vec<f64>>,
) -> Result<LeastDeviationSolution> {
    check_problem(a, b)?;
    let scale = l1(b);
    if a.cols() == 0 || scale == 0.0 {
        return Ok(LeastDeviationSolution::from_coefficients(a, b, vec![0.0; a.cols()], l1));
    }
    let unit: Vec<f64> = b.iter().map(|v| v / scale).collect();
    let c: Vec<f64> = solve(&unit)?.into_iter().map(|v| v * scale).collect();
    if c.iter().any(|v| !v.is_finite()) {
        return Err(Error::NotConverged { iterations: 0 });
    }
    Ok(LeastDeviationSolution::from_coefficients(a, b, c, l1))
}

fn require_optimal(status: LpStatus, iterations: usize) -> Result<()> {
    match status {
        LpStatus::Optimal => Ok(()),
        // Both l¹ programs are feasible and bounded; anything else is a
        // numerical breakdown.
        LpStatus::Infeasible | LpStatus::Unbounded => Err(Error::NotConverged { iterations }),
    }
}

/// Minimizes `‖b − A·c‖₁` through the dual linear program.
pub fn solve_l1(a: &DenseMatrix, b: &[f64]) -> Result<LeastDeviationSolution> {
    with_unit_rhs(a, b, |unit| {
        let (m, n) = a.shape();
        let objective: Vec<f64> = unit.iter().map(|v| -v).collect();
        let lp = LinearProgram::new(objective)?
            .with_equalities(a.transpose(), vec![0.0; n])?
            .with_bounds(vec![-1.0; m], vec![1.0; m])?;
        let sol = SimplexSolver::new().solve(&lp)?;
        require_optimal(sol.status, sol.iterations)?;
        // Stationarity gives b − A·(−y) = reduced costs of u, so c = −y.
        Ok(sol.duals.iter().map(|y| -y).collect())
    })
}

/// Minimizes `‖b − A·c‖₁` by solving the program from
/// [`encode_l1_as_lp`] and reading `c` from its `x` block.
pub fn solve_l1_primal(a: &DenseMatrix, b: &[f64]) -> Result<LeastDeviationSolution> {
    with_unit_rhs(a, b, |unit| {
        let lp = encode_l1_as_lp(a, unit)?;
        let sol = SimplexSolver::new().solve(&lp)?;
        require_optimal(sol.status, sol.iterations)?;
        Ok(sol.x[a.rows()..].to_vec())
    })
}

/// Euclidean least squares via Householder QR.
pub fn solve_l2(a: &DenseMatrix, b: &[f64]) -> Result<LeastDeviationSolution> {
    check_problem(a, b)?;
    if a.cols() == 0 {
        return Ok(LeastDeviationSolution::from_coefficients(a, b, Vec::new(), l2));
    }
    let c = HouseholderQr::factor(a).solve_least_squares(b)?;
    Ok(LeastDeviationSolution::from_coefficients(a, b, c, l2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(v: &[f64]) -> DenseMatrix {
        DenseMatrix::from_columns(&[v]).unwrap()
    }

    #[test]
    fn encoding_layout() {
        let a = col(&[1.0, 2.0]);
        let lp = encode_l1_as_lp(&a, &[3.0, 4.0]).unwrap();
        assert_eq!(lp.num_vars(), 3);
        assert_eq!(lp.num_inequalities(), 4);
        let (g, h) = lp.inequalities();
        assert_eq!(g.row(0), vec![-1.0, 0.0, 1.0]);
        assert_eq!(g.row(3), vec![0.0, -1.0, -2.0]);
        assert_eq!(h, &[3.0, 4.0, -3.0, -4.0]);
        assert_eq!(lp.objective(), &[1.0, 1.0, 0.0]);
        assert_eq!(lp.bounds().0, &[0.0, 0.0, f64::NEG_INFINITY]);
        assert!(encode_l1_as_lp(&a, &[1.0]).is_err());
    }

    #[test]
    fn identity_basis_is_exact() {
        let a = DenseMatrix::identity(2);
        for sol in [
            solve_l1(&a, &[3.0, 4.0]).unwrap(),
            solve_l1_primal(&a, &[3.0, 4.0]).unwrap(),
            solve_l2(&a, &[3.0, 4.0]).unwrap(),
        ] {
            assert!((sol.coefficients[0] - 3.0).abs() < 1e-14);
            assert!((sol.coefficients[1] - 4.0).abs() < 1e-14);
            assert!(sol.residual_norm < 1e-14);
        }
    }

    #[test]
    fn intercept_fit_is_the_median() {
        let a = col(&[1.0, 1.0, 1.0]);
        let b = [1.0, 2.0, 9.0];
        for sol in [solve_l1(&a, &b).unwrap(), solve_l1_primal(&a, &b).unwrap()] {
            assert!((sol.coefficients[0] - 2.0).abs() < 1e-12);
            assert!((sol.residual_norm - 8.0).abs() < 1e-12);
        }
        let lp = encode_l1_as_lp(&a, &b).unwrap();
        let opt = crate::lp::solve_lp(&lp).unwrap();
        assert!((opt.objective_value - 8.0).abs() < 1e-12);
    }

    #[test]
    fn weighted_single_column() {
        // ‖(1,0) − c·(2/3,1/3)‖₁ = |1 − 2c/3| + |c/3|, minimized at c = 3/2.
        let a = col(&[2.0 / 3.0, 1.0 / 3.0]);
        let sol = solve_l1(&a, &[1.0, 0.0]).unwrap();
        assert!((sol.coefficients[0] - 1.5).abs() < 1e-12);
        assert!((sol.residual_norm - 0.5).abs() < 1e-12);
    }

    #[test]
    fn consistent_system_has_zero_optimum() {
        let a = DenseMatrix::from_rows(&[[1.0, 2.0], [0.5, -1.0], [3.0, 1.0]]).unwrap();
        let b = a.mul_vec(&[0.25, -2.0]).unwrap();
        let lp = encode_l1_as_lp(&a, &b).unwrap();
        assert!(crate::lp::solve_lp(&lp).unwrap().objective_value.abs() < 1e-12);
        assert!(solve_l1(&a, &b).unwrap().residual_norm < 1e-12);
    }

    #[test]
    fn mean_minimizes_l2() {
        let sol = solve_l2(&col(&[1.0, 1.0]), &[0.0, 2.0]).unwrap();
        assert!((sol.coefficients[0] - 1.0).abs() < 1e-14);
        assert!((sol.residual_norm - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn empty_basis_and_zero_rhs() {
        let a = DenseMatrix::zeros(3, 0);
        let sol = solve_l1(&a, &[1.0, -2.0, 0.5]).unwrap();
        assert!(sol.coefficients.is_empty());
        assert_eq!(sol.residual, vec![1.0, -2.0, 0.5]);
        assert_eq!(sol.residual_norm, 3.5);
        let sol = solve_l1(&col(&[1.0, 2.0]), &[0.0, 0.0]).unwrap();
        assert_eq!(sol.coefficients, vec![0.0]);
        assert_eq!(sol.residual_norm, 0.0);
    }

    #[test]
    fn rank_deficient_l2_is_reported() {
        let a = DenseMatrix::from_rows(&[[1.0, 2.0], [2.0, 4.0], [3.0, 6.0]]).unwrap();
        assert!(matches!(solve_l2(&a, &[1.0, 0.0, 0.0]), Err(Error::RankDeficient { column: 1 })));
    }

    #[test]
    fn shape_errors() {
        assert!(solve_l1(&col(&[1.0, 2.0]), &[1.0]).is_err());
        assert!(solve_l2(&DenseMatrix::identity(2).transpose().leading_rows(1), &[1.0]).is_err());
    }
}
