//! Plug a norm of your own into the factorization.
//!
//! Here the norm is a row-weighted l1 norm `Σ w_i |x_i|`. Its
//! least-deviation problem is a plain l1 fit on rescaled rows.
//!
//! cargo run --example custom_norm

use arrqr::{
    rrqr_factor, solve_l1, DenseMatrix, LeastDeviationNorm, LeastDeviationSolution, NormSpec, Result,
};

struct WeightedL1 {
    weights: Vec<f64>,
}

impl LeastDeviationNorm for WeightedL1 {
    fn name(&self) -> &str {
        "weighted-l1"
    }

    fn norm(&self, x: &[f64]) -> f64 {
        x.iter().zip(&self.weights).map(|(v, w)| w * v.abs()).sum()
    }

    fn least_deviation(&self, basis: &DenseMatrix, b: &[f64]) -> Result<LeastDeviationSolution> {
        let w = &self.weights;
        let scaled = DenseMatrix::from_fn(basis.rows(), basis.cols(), |i, j| w[i] * basis.get(i, j))?;
        let wb: Vec<f64> = b.iter().zip(w).map(|(v, wi)| v * wi).collect();
        let fit = solve_l1(&scaled, &wb)?;
        let ac = basis.mul_vec(&fit.coefficients)?;
        let residual: Vec<f64> = b.iter().zip(&ac).map(|(v, p)| v - p).collect();
        Ok(LeastDeviationSolution {
            residual_norm: self.norm(&residual),
            coefficients: fit.coefficients,
            residual,
        })
    }
}

fn main() -> Result<()> {
    let a = DenseMatrix::from_rows(&[[1.0, 2.0, 0.0], [0.0, 1.0, 3.0], [2.0, 0.0, 1.0], [1.0, 1.0, 1.0]])?;

    let plain = rrqr_factor(&a, &NormSpec::L1, 0.0, None)?;
    let weighted = NormSpec::custom(WeightedL1 { weights: vec![10.0, 1.0, 1.0, 1.0] });
    let f = rrqr_factor(&a, &weighted, 0.0, None)?;

    println!("{:<12} pivots {:?}  diag {:?}", "l1", plain.perm().as_slice(), plain.gammas());
    println!("{:<12} pivots {:?}  diag {:?}", weighted.name(), f.perm().as_slice(), f.gammas());
    Ok(())
}
