//! Fit a line through data with one gross outlier, in l1 and in l2.
//!
//! cargo run --example l1_regression

use arrqr::{solve_l1, solve_l2, DenseMatrix};

fn main() -> arrqr::Result<()> {
    // y = 2x + 1 sampled at x = 0..9, with y[7] replaced by garbage.
    let xs: Vec<f64> = (0..10).map(f64::from).collect();
    let mut ys: Vec<f64> = xs.iter().map(|x| 2.0 * x + 1.0).collect();
    ys[7] = 60.0;

    let design = DenseMatrix::from_fn(xs.len(), 2, |i, j| if j == 0 { 1.0 } else { xs[i] })?;

    let lad = solve_l1(&design, &ys)?;
    let ls = solve_l2(&design, &ys)?;
    println!("l1 fit: intercept {:.6}, slope {:.6}", lad.coefficients[0], lad.coefficients[1]);
    println!("l2 fit: intercept {:.6}, slope {:.6}", ls.coefficients[0], ls.coefficients[1]);
    println!("l1 residual norm {:.6} (all of it at the outlier)", lad.residual_norm);

    // The intercept-only l1 fit is the median.
    let ones = DenseMatrix::from_fn(5, 1, |_, _| 1.0)?;
    let median = solve_l1(&ones, &[3.0, 100.0, 8.0, -2.0, 9.0])?;
    println!("median of [3, 100, 8, -2, 9] = {:.12}", median.coefficients[0]);
    Ok(())
}
