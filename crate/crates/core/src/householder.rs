//! Householder QR, optionally with column pivoting on the largest remaining
//! Euclidean column norm.

use crate::error::{Error, Result};
use crate::matrix::{axpy, dot, DenseMatrix, Permutation};

/// Packed Householder factorization `A·P = Q·R`.
///
/// Reflector vectors live below the diagonal of `packed` (implicit unit
/// leading entry), `R` on and above it.
#[derive(Clone, Debug)]
pub(crate) struct HouseholderQr {
    rows: usize,
    cols: usize,
    packed: Vec<f64>,
    tau: Vec<f64>,
    perm: Vec<usize>,
    /// Number of reflectors applied.
    steps: usize,
}

impl HouseholderQr {
    pub(crate) fn factor(a: &DenseMatrix) -> Self {
        Self::run(a, false)
    }

    /// Column-pivoted variant. Stops early once every remaining column is
    /// exactly zero.
    pub(crate) fn factor_pivoted(a: &DenseMatrix) -> Self {
        Self::run(a, true)
    }

    fn run(a: &DenseMatrix, pivoting: bool) -> Self {
        let (m, n) = a.shape();
        let mut packed = a.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let kmax = m.min(n);
        let mut tau = Vec::with_capacity(kmax);
        let mut steps = kmax;
        for k in 0..kmax {
            if pivoting {
                let mut best = (k, -1.0);
                for j in k..n {
                    let c = &packed[j * m + k..(j + 1) * m];
                    let s = dot(c, c);
                    if s > best.1 {
                        best = (j, s);
                    }
                }
                if best.1 <= 0.0 {
                    steps = k;
                    break;
                }
                if best.0 != k {
                    let (lo, hi) = packed.split_at_mut(best.0 * m);
                    lo[k * m..(k + 1) * m].swap_with_slice(&mut hi[..m]);
                    perm.swap(k, best.0);
                }
            }
            let (head, tail) = packed.split_at_mut((k + 1) * m);
            let col = &mut head[k * m + k..];
            let t = make_reflector(col);
            tau.push(t);
            if t != 0.0 {
                let v = &col[..];
                for j in 0..n - k - 1 {
                    let target = &mut tail[j * m + k..(j + 1) * m];
                    apply_reflector(v, t, target);
                }
            }
        }
        Self {
            rows: m,
            cols: n,
            packed,
            tau,
            perm,
            steps,
        }
    }

    pub(crate) fn steps(&self) -> usize {
        self.steps
    }

    pub(crate) fn permutation(&self) -> Permutation {
        Permutation::new(self.perm.clone()).expect("pivoting keeps a bijection")
    }

    pub(crate) fn r_diag(&self, k: usize) -> f64 {
        self.packed[k * self.rows + k]
    }

    /// Upper trapezoidal factor, `steps × cols`.
    pub(crate) fn r(&self) -> DenseMatrix {
        let (m, r) = (self.rows, self.steps);
        let mut out = vec![0.0; r * self.cols];
        for j in 0..self.cols {
            for i in 0..r.min(j + 1) {
                out[j * r + i] = self.packed[j * m + i];
            }
        }
        DenseMatrix::from_parts(r, self.cols, out)
    }

    /// Thin orthogonal factor, `rows × steps`.
    pub(crate) fn q_thin(&self) -> DenseMatrix {
        let (m, r) = (self.rows, self.steps);
        let mut q = vec![0.0; m * r];
        for j in 0..r {
            let col = &mut q[j * m..(j + 1) * m];
            col[j] = 1.0;
            for k in (0..r).rev() {
                let v = &self.packed[k * m + k..(k + 1) * m];
                apply_reflector(v, self.tau[k], &mut col[k..]);
            }
        }
        DenseMatrix::from_parts(m, r, q)
    }

    /// Least-squares solution of `A·x ≈ b` for an unpivoted factorization of
    /// a full-column-rank matrix.
    pub(crate) fn solve_least_squares(&self, b: &[f64]) -> Result<Vec<f64>> {
        let (m, n) = (self.rows, self.cols);
        debug_assert!(self.perm.iter().enumerate().all(|(i, &p)| i == p));
        if b.len() != m {
            return Err(Error::Shape(format!("rhs of length {} for {m} rows", b.len())));
        }
        if n > m {
            return Err(Error::RankDeficient { column: m });
        }
        let rmax = (0..n).map(|k| self.r_diag(k).abs()).fold(0.0, f64::max);
        let tol = f64::EPSILON * m.max(n) as f64 * rmax;
        for k in 0..n {
            if self.r_diag(k).abs() <= tol || rmax == 0.0 {
                return Err(Error::RankDeficient { column: k });
            }
        }
        let mut y = b.to_vec();
        for k in 0..n {
            let v = &self.packed[k * m + k..(k + 1) * m];
            apply_reflector(v, self.tau[k], &mut y[k..]);
        }
        let mut x = y[..n].to_vec();
        for k in (0..n).rev() {
            x[k] /= self.r_diag(k);
            let xk = x[k];
            for i in 0..k {
                x[i] -= self.packed[k * m + i] * xk;
            }
        }
        Ok(x)
    }
}

/// Turns `x` into `beta·e₁` via `I − tau·v·vᵀ`; stores `beta` in `x[0]` and
/// `v[1..]` in `x[1..]`. Returns `tau`.
fn make_reflector(x: &mut [f64]) -> f64 {
    let alpha = x[0];
    let tail = &x[1..];
    let xnorm = tail.iter().fold(0.0f64, |acc, v| acc.hypot(*v));
    if xnorm == 0.0 {
        return 0.0;
    }
    let beta = -alpha.signum() * alpha.hypot(xnorm);
    let tau = (beta - alpha) / beta;
    let scale = 1.0 / (alpha - beta);
    for v in &mut x[1..] {
        *v *= scale;
    }
    x[0] = beta;
    tau
}

/// target ← (I − tau·v·vᵀ)·target, with v[0] taken as 1.
fn apply_reflector(v: &[f64], tau: f64, target: &mut [f64]) {
    if tau == 0.0 {
        return;
    }
    let w = target[0] + dot(&v[1..], &target[1..]);
    let s = -tau * w;
    target[0] += s;
    axpy(s, &v[1..], &mut target[1..]);
}
