use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("vector is empty")]
    EmptyVector,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is singular to working precision (pivot {pivot})")]
    Singular { pivot: usize },

    #[error("matrix is rank deficient (column {column})")]
    RankDeficient { column: usize },

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("simplex did not converge within {iterations} iterations")]
    NotConverged { iterations: usize },

    #[error("least-deviation solve failed at factorization step {step}: {source}")]
    Step {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command-line front end:
    /// 1 for bad input, 2 for numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Shape(_)
            | Error::NonFinite { .. }
            | Error::EmptyVector
            | Error::InvalidArgument(_)
            | Error::Parse(_)
            | Error::Io(_)
            | Error::Csv(_) => 1,
            Error::Singular { .. }
            | Error::RankDeficient { .. }
            | Error::Infeasible
            | Error::Unbounded
            | Error::NotConverged { .. }
            | Error::Step { .. } => 2,
        }
    }
}
