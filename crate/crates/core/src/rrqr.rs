//! Rank-revealing QR in an arbitrary norm, its truncations, and the
//! classical Householder column-pivoted QR used as a baseline.
//!
//! The factorization builds `A·P = Q·R` one column at a time. With `Q^j`
//! holding the columns chosen so far, every remaining column `A_i` is
//! scored by its best approximation error `min_c ‖A_i − Q^j·c‖`; the column
//! with the largest error becomes the next pivot, its normalized residual
//! becomes the next column of `Q`, and the minimizing `c` together with the
//! error `γ_j` fill the next column of `R`. In the l² norm this is
//! Gram–Schmidt with column pivoting; in other norms `Q` is no longer
//! orthogonal, but the diagonal of `R` still never increases.

use crate::error::{Error, Result};
use crate::householder::HouseholderQr;
use crate::matrix::{induced_1norm, matmul, unpermute_cols, DenseMatrix, Permutation};
use crate::norm::NormSpec;

/// Output of [`rrqr_factor`] or [`classical_cpqr`]: `A·P ≈ Q·R` with `Q`
/// of size `m × r` and `R` of size `r × n`.
#[derive(Clone, Debug)]
pub struct Factorization {
    q: DenseMatrix,
    r: DenseMatrix,
    perm: Permutation,
    gammas: Vec<f64>,
    norm: NormSpec,
}

impl Factorization {
    pub fn q(&self) -> &DenseMatrix {
        &self.q
    }

    pub fn r(&self) -> &DenseMatrix {
        &self.r
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    /// Residual norms of the pivots in order; equal to the diagonal of `R`.
    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn norm(&self) -> &NormSpec {
        &self.norm
    }

    /// Number of completed steps (columns of `Q`).
    pub fn rank(&self) -> usize {
        self.gammas.len()
    }

    pub fn rows(&self) -> usize {
        self.q.rows()
    }

    pub fn cols(&self) -> usize {
        self.r.cols()
    }
}

/// How candidate columns are scored at each step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CandidateSearch {
    /// Re-solves only candidates that can still win. A candidate's error
    /// from an earlier step bounds its current error from above, since the
    /// span of `Q` only grows, so candidates are visited in decreasing
    /// order of that bound and the scan stops once no bound can beat the
    /// best exact score. Selects the same pivot as `Exhaustive`.
    #[default]
    Pruned,
    /// Re-solves every remaining candidate at every step.
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RrqrOptions {
    /// Stop once the next `γ_j` is at most `rel_tol · γ_0`.
    pub rel_tol: f64,
    /// Stop after this many pivots.
    pub max_rank: Option<usize>,
    pub search: CandidateSearch,
}

impl Default for RrqrOptions {
    fn default() -> Self {
        Self {
            rel_tol: 0.0,
            max_rank: None,
            search: CandidateSearch::Pruned,
        }
    }
}

struct Candidate {
    col: usize,
    /// `A_col − Q^stage · coef`.
    residual: Vec<f64>,
    coef: Vec<f64>,
    /// `‖residual‖`, the exact minimum over `Q^stage`.
    value: f64,
    stage: usize,
}

impl Candidate {
    /// Re-fits against a larger basis. Minimizing over `residual` rather than
    /// the original column gives the same minimum but keeps the right-hand
    /// side at the scale of the current error.
    fn advance(&mut self, basis: &DenseMatrix, norm: &NormSpec, step: usize) -> Result<()> {
        let sol = norm.least_deviation(basis, &self.residual).map_err(|e| Error::Step {
            step,
            source: Box::new(e),
        })?;
        self.coef.resize(basis.cols(), 0.0);
        for (c, d) in self.coef.iter_mut().zip(&sol.coefficients) {
            *c += d;
        }
        self.residual = sol.residual;
        self.value = sol.residual_norm;
        self.stage = basis.cols();
        Ok(())
    }

    /// Ranks by value, then by lower column index.
    fn beats(&self, other: &Candidate) -> bool {
        self.value > other.value || (self.value == other.value && self.col < other.col)
    }
}

/// Arbitrary-norm rank-revealing factorization with default search.
///
/// Stops early when `γ_j ≤ rel_tol·γ_0` (or `γ_j` is exactly zero) or
/// after `max_rank` pivots; the unprocessed columns then follow the pivots
/// in ascending order and their `R` columns hold their best coefficients on
/// the final `Q`.
pub fn rrqr_factor(
    a: &DenseMatrix,
    norm: &NormSpec,
    rel_tol: f64,
    max_rank: Option<usize>,
) -> Result<Factorization> {
    rrqr_factor_with(
        a,
        norm,
        &RrqrOptions {
            rel_tol,
            max_rank,
            ..RrqrOptions::default()
        },
    )
}

pub fn rrqr_factor_with(a: &DenseMatrix, norm: &NormSpec, opts: &RrqrOptions) -> Result<Factorization> {
    let (m, n) = a.shape();
    if a.is_empty() {
        return Err(Error::InvalidArgument("cannot factor an empty matrix".into()));
    }
    if m < n {
        return Err(Error::Shape(format!("expected rows >= cols, got {m}x{n}")));
    }
    if opts.rel_tol.is_nan() || opts.rel_tol < 0.0 {
        return Err(Error::InvalidArgument(format!("rel_tol must be >= 0, got {}", opts.rel_tol)));
    }
    let max_rank = opts.max_rank.unwrap_or(n).min(n);

    let mut remaining: Vec<Candidate> = (0..n)
        .map(|j| Candidate {
            col: j,
            residual: a.col(j).to_vec(),
            coef: Vec::new(),
            value: norm.eval(a.col(j)),
            stage: 0,
        })
        .collect();
    let mut q_data: Vec<f64> = Vec::with_capacity(m * max_rank);
    let mut pivots = Vec::with_capacity(n);
    let mut r_cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut gammas: Vec<f64> = Vec::with_capacity(max_rank);
    let mut order: Vec<usize> = Vec::with_capacity(n);

    while !remaining.is_empty() && pivots.len() < max_rank {
        let step = pivots.len();
        let basis = DenseMatrix::from_parts(m, step, q_data.clone());

        order.clear();
        order.extend(0..remaining.len());
        order.sort_by(|&x, &y| {
            let (cx, cy) = (&remaining[x], &remaining[y]);
            cy.value.total_cmp(&cx.value).then(cx.col.cmp(&cy.col))
        });
        let mut best: Option<usize> = None;
        for &idx in &order {
            if let Some(b) = best {
                if opts.search == CandidateSearch::Pruned && !remaining[idx].beats(&remaining[b]) {
                    break;
                }
            }
            if remaining[idx].stage < step {
                remaining[idx].advance(&basis, norm, step)?;
            }
            if best.is_none_or(|b| remaining[idx].beats(&remaining[b])) {
                best = Some(idx);
            }
        }
        let win = best.expect("remaining is nonempty");
        let gamma = remaining[win].value;
        if gamma == 0.0 || (step > 0 && gamma <= opts.rel_tol * gammas[0]) {
            break;
        }
        let cand = remaining.remove(win);
        q_data.extend(cand.residual.iter().map(|v| v / gamma));
        let mut rc = cand.coef;
        rc.push(gamma);
        r_cols.push(rc);
        gammas.push(gamma);
        pivots.push(cand.col);
    }

    let rank = pivots.len();
    let q = DenseMatrix::from_col_major(m, rank, q_data)?;
    // Columns never pivoted get their best coefficients on the final basis.
    for cand in &mut remaining {
        if rank > 0 && cand.stage < rank {
            cand.advance(&q, norm, rank)?;
        }
        pivots.push(cand.col);
        let mut coef = std::mem::take(&mut cand.coef);
        coef.resize(rank, 0.0);
        r_cols.push(coef);
    }
    let mut r_data = vec![0.0; rank * n];
    for (p, col) in r_cols.iter().enumerate() {
        r_data[p * rank..p * rank + col.len()].copy_from_slice(col);
    }
    Ok(Factorization {
        q,
        r: DenseMatrix::from_col_major(rank, n, r_data)?,
        perm: Permutation::new(pivots)?,
        gammas,
        norm: norm.clone(),
    })
}

/// Householder QR with column pivoting on the largest remaining Euclidean
/// column norm. Signs are normalized so the diagonal of `R` is
/// nonnegative; stops early only when every remaining column is exactly
/// zero.
pub fn classical_cpqr(a: &DenseMatrix) -> Result<Factorization> {
    if a.is_empty() {
        return Err(Error::InvalidArgument("cannot factor an empty matrix".into()));
    }
    let qr = HouseholderQr::factor_pivoted(a);
    let mut q = qr.q_thin();
    let mut r = qr.r();
    let rank = qr.steps();
    for k in 0..rank {
        if r.get(k, k) < 0.0 {
            for j in 0..r.cols() {
                r.set(k, j, -r.get(k, j));
            }
            for v in q.col_mut(k) {
                *v = -*v;
            }
        }
    }
    let gammas = (0..rank).map(|k| r.get(k, k)).collect();
    Ok(Factorization {
        q,
        r,
        perm: qr.permutation(),
        gammas,
        norm: NormSpec::L2,
    })
}

#[derive(Clone, Debug)]
pub struct TruncationResult {
    pub k: usize,
    /// `Q(:,1:k)·R(1:k,:)·Pᵀ`.
    pub approx: DenseMatrix,
    /// `‖A − approx‖₁`, when `A` was supplied.
    pub error_1norm: Option<f64>,
}

/// Rank-`k` approximation from the leading `k` columns of `Q` and rows of `R`.
pub fn truncate(f: &Factorization, k: usize) -> Result<TruncationResult> {
    if k == 0 || k > f.rank() {
        return Err(Error::InvalidArgument(format!(
            "truncation rank {k} outside 1..={}",
            f.rank()
        )));
    }
    let qk = f.q.leading_cols(k);
    let rk = f.r.leading_rows(k);
    let approx = unpermute_cols(&matmul(&qk, &rk)?, &f.perm)?;
    Ok(TruncationResult {
        k,
        approx,
        error_1norm: None,
    })
}

/// [`truncate`] plus the induced 1-norm error against the original matrix.
pub fn truncate_against(f: &Factorization, k: usize, a: &DenseMatrix) -> Result<TruncationResult> {
    let mut t = truncate(f, k)?;
    t.error_1norm = Some(induced_1norm(&a.sub(&t.approx)?));
    Ok(t)
}

/// `Q·R·Pᵀ`.
pub fn reconstruct(f: &Factorization) -> Result<DenseMatrix> {
    if f.rank() == 0 {
        return Ok(DenseMatrix::zeros(f.rows(), f.cols()));
    }
    unpermute_cols(&matmul(&f.q, &f.r)?, &f.perm)
}
