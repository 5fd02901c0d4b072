//! Dense column-major matrices, column permutations and the handful of
//! kernels (products, induced 1-norm, LU solves) the factorizations need.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};

/// Real matrix stored column by column.
///
/// Entries are checked for finiteness on construction, so every value held
/// by a `DenseMatrix` is a finite `f64`.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Builds a matrix from column-major data.
    pub fn from_col_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: pos % rows.max(1),
                col: pos / rows.max(1),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from a list of rows. All rows must have equal length.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = vec![0.0; nrows * ncols];
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != ncols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                data[j * nrows + i] = v;
            }
        }
        Self::from_col_major(nrows, ncols, data)
    }

    /// Builds a matrix from its columns. All columns must have equal length.
    pub fn from_columns<C: AsRef<[f64]>>(columns: &[C]) -> Result<Self> {
        let ncols = columns.len();
        let nrows = columns.first().map_or(0, |c| c.as_ref().len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for (j, col) in columns.iter().enumerate() {
            let col = col.as_ref();
            if col.len() != nrows {
                return Err(Error::Shape(format!(
                    "column {j} has {} entries, expected {nrows}",
                    col.len()
                )));
            }
            data.extend_from_slice(col);
        }
        Self::from_col_major(nrows, ncols, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Self::from_col_major(rows, cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i] } else { 0.0 })
    }

    /// Wraps data produced by internal kernels from finite inputs.
    pub(crate) fn from_parts(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|v| v.is_finite()));
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[col * self.rows + row]
    }

    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub(crate) fn col_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: f64) {
        self.data[col * self.rows + row] = value;
    }

    /// Column-major view of all entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn diag(&self) -> Vec<f64> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.data[i * self.cols + j] = self.get(i, j);
            }
        }
        out
    }

    /// The first `k` columns.
    pub fn leading_cols(&self, k: usize) -> DenseMatrix {
        assert!(k <= self.cols, "requested {k} of {} columns", self.cols);
        Self::from_parts(self.rows, k, self.data[..k * self.rows].to_vec())
    }

    /// The first `k` rows.
    pub fn leading_rows(&self, k: usize) -> DenseMatrix {
        assert!(k <= self.rows, "requested {k} of {} rows", self.rows);
        let mut data = Vec::with_capacity(k * self.cols);
        for j in 0..self.cols {
            data.extend_from_slice(&self.col(j)[..k]);
        }
        Self::from_parts(k, self.cols, data)
    }

    pub fn scale(&self, s: f64) -> Result<DenseMatrix> {
        Self::from_col_major(self.rows, self.cols, self.data.iter().map(|v| v * s).collect())
    }

    pub fn sub(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Self::from_col_major(self.rows, self.cols, data)
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Self::from_col_major(self.rows, self.cols, data)
    }

    fn check_same_shape(&self, other: &DenseMatrix) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Largest absolute entry; zero for an empty matrix.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Computes `self * x` for a vector `x`.
    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::Shape(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        let mut y = vec![0.0; self.rows];
        for (j, &xj) in x.iter().enumerate() {
            if xj != 0.0 {
                axpy(xj, self.col(j), &mut y);
            }
        }
        Ok(y)
    }

    /// Computes `selfᵀ * x`.
    pub fn tr_mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.rows {
            return Err(Error::Shape(format!(
                "transpose of {}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.cols).map(|j| dot(self.col(j), x)).collect())
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (row, col): (usize, usize)) -> &f64 {
        &self.data[col * self.rows + row]
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v:>12.5e}")).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// y += alpha * x
pub(crate) fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// A bijection on column indices. Position `j` holds the index of the
/// original column that lands in column `j` of `A·P`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &k in &map {
            if k >= n || seen[k] {
                return Err(Error::InvalidArgument(format!(
                    "{map:?} is not a permutation of 0..{n}"
                )));
            }
            seen[k] = true;
        }
        Ok(Self { map })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (j, &k) in self.map.iter().enumerate() {
            inv[k] = j;
        }
        Permutation { map: inv }
    }

    /// `self` applied after `first`: `(A·first)·self`.
    pub fn compose(&self, first: &Permutation) -> Result<Permutation> {
        if self.len() != first.len() {
            return Err(Error::Shape(format!(
                "permutations of length {} and {}",
                self.len(),
                first.len()
            )));
        }
        Ok(Permutation {
            map: self.map.iter().map(|&j| first.map[j]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(j, &k)| j == k)
    }
}

/// Returns `A·P`: column `j` of the result is column `P[j]` of `A`.
pub fn permute_cols(a: &DenseMatrix, p: &Permutation) -> Result<DenseMatrix> {
    if p.len() != a.cols() {
        return Err(Error::Shape(format!(
            "permutation of length {} for {} columns",
            p.len(),
            a.cols()
        )));
    }
    let mut data = Vec::with_capacity(a.rows() * a.cols());
    for &k in p.as_slice() {
        data.extend_from_slice(a.col(k));
    }
    Ok(DenseMatrix::from_parts(a.rows(), a.cols(), data))
}

/// Returns `A·Pᵀ`, undoing [`permute_cols`].
pub fn unpermute_cols(a: &DenseMatrix, p: &Permutation) -> Result<DenseMatrix> {
    permute_cols(a, &p.inverse())
}

/// Induced 1-norm: largest absolute column sum.
pub fn induced_1norm(a: &DenseMatrix) -> f64 {
    (0..a.cols())
        .map(|j| a.col(j).iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn matmul(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    if a.cols() != b.rows() {
        return Err(Error::Shape(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let mut out = vec![0.0; a.rows() * b.cols()];
    for j in 0..b.cols() {
        let dst = &mut out[j * a.rows()..(j + 1) * a.rows()];
        for (k, &bkj) in b.col(j).iter().enumerate() {
            if bkj != 0.0 {
                axpy(bkj, a.col(k), dst);
            }
        }
    }
    DenseMatrix::from_col_major(a.rows(), b.cols(), out)
}

/// LU factorization with partial pivoting, `P·A = L·U`, packed in place.
#[derive(Clone, Debug)]
pub struct Lu {
    n: usize,
    lu: Vec<f64>,
    pivots: Vec<usize>,
}

impl Lu {
    pub fn factor(a: &DenseMatrix) -> Result<Self> {
        let n = a.rows();
        if a.cols() != n {
            return Err(Error::Shape(format!(
                "LU needs a square matrix, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let mut lu = a.as_slice().to_vec();
        let mut pivots = vec![0; n];
        let tiny = n as f64 * f64::EPSILON * a.max_abs();
        for k in 0..n {
            let col = &lu[k * n..(k + 1) * n];
            let (p, pmax) = (k..n).fold((k, -1.0), |(bi, bv), i| {
                let v = col[i].abs();
                if v > bv {
                    (i, v)
                } else {
                    (bi, bv)
                }
            });
            if pmax <= tiny || pmax == 0.0 {
                return Err(Error::Singular { pivot: k });
            }
            pivots[k] = p;
            if p != k {
                for j in 0..n {
                    lu.swap(j * n + k, j * n + p);
                }
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                lu[k * n + i] /= pivot;
            }
            for j in k + 1..n {
                let ukj = lu[j * n + k];
                if ukj != 0.0 {
                    for i in k + 1..n {
                        lu[j * n + i] -= lu[k * n + i] * ukj;
                    }
                }
            }
        }
        Ok(Self { n, lu, pivots })
    }

    /// Solves `A·x = b` in place.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.n;
        for k in 0..n {
            b.swap(k, self.pivots[k]);
        }
        for k in 0..n {
            let bk = b[k];
            if bk != 0.0 {
                for i in k + 1..n {
                    b[i] -= self.lu[k * n + i] * bk;
                }
            }
        }
        for k in (0..n).rev() {
            b[k] /= self.lu[k * n + k];
            let bk = b[k];
            if bk != 0.0 {
                for i in 0..k {
                    b[i] -= self.lu[k * n + i] * bk;
                }
            }
        }
    }
}

/// Solves `A·X = B` for square `A` by LU with partial pivoting.
pub fn lu_solve(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    if b.rows() != a.rows() {
        return Err(Error::Shape(format!(
            "right-hand side has {} rows, matrix has {}",
            b.rows(),
            a.rows()
        )));
    }
    let lu = Lu::factor(a)?;
    let mut x = b.as_slice().to_vec();
    for chunk in x.chunks_mut(a.rows().max(1)).take(b.cols()) {
        lu.solve_in_place(chunk);
    }
    DenseMatrix::from_col_major(b.rows(), b.cols(), x).map_err(|_| Error::Singular { pivot: a.rows() })
}

pub fn inverse(a: &DenseMatrix) -> Result<DenseMatrix> {
    lu_solve(a, &DenseMatrix::identity(a.rows()))
}
