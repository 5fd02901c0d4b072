//! Vector norms paired with their least-deviation solvers.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lad::{self, LeastDeviationSolution};
use crate::matrix::DenseMatrix;

/// A vector norm together with a solver for `argmin_c ‖b − A·c‖` in that
/// norm. Implement this to run the factorization under a norm the crate
/// does not ship.
pub trait LeastDeviationNorm: Send + Sync {
    fn name(&self) -> &str;

    /// `x` is never empty.
    fn norm(&self, x: &[f64]) -> f64;

    /// Minimizes `‖b − basis·c‖`. The basis has full column rank whenever
    /// the factorization calls this.
    fn least_deviation(&self, basis: &DenseMatrix, b: &[f64]) -> Result<LeastDeviationSolution>;
}

/// Which norm drives a factorization.
#[derive(Clone)]
pub enum NormSpec {
    L1,
    L2,
    Custom(Arc<dyn LeastDeviationNorm>),
}

impl NormSpec {
    pub fn custom(norm: impl LeastDeviationNorm + 'static) -> Self {
        NormSpec::Custom(Arc::new(norm))
    }

    pub fn name(&self) -> &str {
        match self {
            NormSpec::L1 => "l1",
            NormSpec::L2 => "l2",
            NormSpec::Custom(n) => n.name(),
        }
    }

    /// Evaluates the norm without the emptiness check.
    pub(crate) fn eval(&self, x: &[f64]) -> f64 {
        match self {
            NormSpec::L1 => x.iter().map(|v| v.abs()).sum(),
            NormSpec::L2 => x.iter().fold(0.0f64, |acc, v| acc.hypot(*v)),
            NormSpec::Custom(n) => n.norm(x),
        }
    }

    pub fn least_deviation(&self, basis: &DenseMatrix, b: &[f64]) -> Result<LeastDeviationSolution> {
        match self {
            NormSpec::L1 => lad::solve_l1(basis, b),
            NormSpec::L2 => lad::solve_l2(basis, b),
            NormSpec::Custom(n) => n.least_deviation(basis, b),
        }
    }
}

impl fmt::Debug for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormSpec::L1 => write!(f, "L1"),
            NormSpec::L2 => write!(f, "L2"),
            NormSpec::Custom(n) => write!(f, "Custom({})", n.name()),
        }
    }
}

impl std::str::FromStr for NormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(NormSpec::L1),
            "l2" => Ok(NormSpec::L2),
            other => Err(Error::InvalidArgument(format!("unknown norm '{other}' (expected l1 or l2)"))),
        }
    }
}

/// `‖x‖` under `norm`.
pub fn vec_norm(x: &[f64], norm: &NormSpec) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::EmptyVector);
    }
    Ok(norm.eval(x))
}
