//! Solve a small bounded linear program and read back its duals.
//!
//! cargo run --example linear_program

use arrqr::{solve_lp, DenseMatrix, LinearProgram, LpStatus};

fn main() -> arrqr::Result<()> {
    // max 3x + 5y  s.t.  x ≤ 4,  2y ≤ 12,  3x + 2y ≤ 18,  x, y ≥ 0
    let lp = LinearProgram::new(vec![-3.0, -5.0])?.with_inequalities(
        DenseMatrix::from_rows(&[[1.0, 0.0], [0.0, 2.0], [3.0, 2.0]])?,
        vec![4.0, 12.0, 18.0],
    )?;
    let sol = solve_lp(&lp)?;
    assert_eq!(sol.status, LpStatus::Optimal);
    println!("x = {:?}, objective {}", sol.x, -sol.objective_value);
    println!("shadow prices: {:?}", sol.duals.iter().map(|d| 0.0 - d).collect::<Vec<_>>());
    println!("{} pivots", sol.iterations);

    // Box constraints and free variables go straight into the bounds.
    let boxed = LinearProgram::new(vec![1.0, -1.0])?
        .with_equalities(DenseMatrix::from_rows(&[[1.0, 1.0]])?, vec![2.0])?
        .with_bounds(vec![-5.0, f64::NEG_INFINITY], vec![5.0, 4.0])?;
    let sol = solve_lp(&boxed)?;
    println!("boxed: x = {:?}, objective {}", sol.x, sol.objective_value);

    let infeasible = LinearProgram::new(vec![1.0])?
        .with_inequalities(DenseMatrix::from_rows(&[[1.0]])?, vec![-1.0])?;
    println!("infeasible: {:?}", solve_lp(&infeasible)?.status);
    Ok(())
}
