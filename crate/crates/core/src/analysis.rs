//! Measurements reported by the experiments: 1-norm condition numbers,
//! factorization error, diagonal profiles and low-rank error curves.

use crate::error::{Error, Result};
use crate::matrix::{induced_1norm, inverse, matmul, permute_cols, DenseMatrix};
use crate::rrqr::{truncate_against, Factorization};

/// `‖A‖₁·‖A⁻¹‖₁` with the inverse formed explicitly by LU.
pub fn cond_1(a: &DenseMatrix) -> Result<f64> {
    if a.rows() != a.cols() || a.is_empty() {
        return Err(Error::Shape(format!(
            "condition number needs a nonempty square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    Ok(induced_1norm(a) * induced_1norm(&inverse(a)?))
}

/// `‖A·P − Q·R‖₁` for a complete factorization of `a`.
pub fn factorization_error(a: &DenseMatrix, f: &Factorization) -> Result<f64> {
    if a.shape() != (f.rows(), f.cols()) {
        return Err(Error::Shape(format!(
            "{}x{} matrix with a factorization of a {}x{} matrix",
            a.rows(),
            a.cols(),
            f.rows(),
            f.cols()
        )));
    }
    if f.rank() != a.cols() {
        return Err(Error::InvalidArgument(format!(
            "factorization stopped after {} of {} columns",
            f.rank(),
            a.cols()
        )));
    }
    residual_1norm(a, f)
}

/// `‖A·P − Q·R‖₁` without requiring the factorization to be complete.
pub(crate) fn residual_1norm(a: &DenseMatrix, f: &Factorization) -> Result<f64> {
    let ap = permute_cols(a, f.perm())?;
    if f.rank() == 0 {
        return Ok(induced_1norm(&ap));
    }
    Ok(induced_1norm(&ap.sub(&matmul(f.q(), f.r())?)?))
}

/// Diagonal of `R`.
pub fn diag_profile(f: &Factorization) -> Vec<f64> {
    f.gammas().to_vec()
}

/// `(k, ‖A − A_k‖₁)` for each requested truncation rank.
pub fn lowrank_error_curve(a: &DenseMatrix, f: &Factorization, ks: &[usize]) -> Result<Vec<(usize, f64)>> {
    ks.iter()
        .map(|&k| {
            let t = truncate_against(f, k, a)?;
            Ok((k, t.error_1norm.expect("error requested")))
        })
        .collect()
}

/// The quantities plotted against each other in the conditioning sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConditionReport {
    pub cond_a: f64,
    pub cond_q: f64,
    pub error_1: f64,
    pub m: usize,
    /// `σ_min/σ_max` of the generated input.
    pub spectrum_ratio: f64,
}

impl ConditionReport {
    pub fn measure(a: &DenseMatrix, f: &Factorization, spectrum_ratio: f64) -> Result<Self> {
        Ok(Self {
            cond_a: cond_1(a)?,
            cond_q: cond_1(f.q())?,
            error_1: factorization_error(a, f)?,
            m: a.rows(),
            spectrum_ratio,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norm::NormSpec;
    use crate::rrqr::rrqr_factor;

    #[test]
    fn condition_of_simple_matrices() {
        assert_eq!(cond_1(&DenseMatrix::identity(4)).unwrap(), 1.0);
        assert_eq!(cond_1(&DenseMatrix::from_diag(&[2.0, 0.5]).unwrap()).unwrap(), 4.0);
        assert!(cond_1(&DenseMatrix::zeros(2, 2)).is_err());
        assert!(cond_1(&DenseMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn errors_of_exact_examples() {
        let a = DenseMatrix::identity(3);
        let f = rrqr_factor(&a, &NormSpec::L1, 0.0, None).unwrap();
        assert!(factorization_error(&a, &f).unwrap() <= 1e-14);
        assert_eq!(diag_profile(&f), vec![1.0, 1.0, 1.0]);
        let curve = lowrank_error_curve(&a, &f, &[3]).unwrap();
        assert_eq!(curve, vec![(3, 0.0)]);

        let a = DenseMatrix::from_rows(&[[1.0, 2.0], [0.0, 1.0]]).unwrap();
        let f = rrqr_factor(&a, &NormSpec::L1, 0.0, None).unwrap();
        assert!(factorization_error(&a, &f).unwrap() <= 1e-12);
        let report = ConditionReport::measure(&a, &f, 1.0).unwrap();
        assert!(report.cond_q > 0.0 && report.error_1 >= 0.0);
    }

    #[test]
    fn incomplete_factorization_is_rejected() {
        let a = DenseMatrix::from_diag(&[3.0, 2.0, 1.0]).unwrap();
        let f = rrqr_factor(&a, &NormSpec::L1, 0.0, Some(2)).unwrap();
        assert!(factorization_error(&a, &f).is_err());
        assert!(lowrank_error_curve(&a, &f, &[3]).is_err());
        let curve = lowrank_error_curve(&a, &f, &[1, 2]).unwrap();
        assert_eq!(curve, vec![(1, 2.0), (2, 1.0)]);
    }
}
