//! Brute-force oracles shared by the integration tests. None of them call
//! into the solvers under test.
#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

use arrqr::DenseMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries uniform in [-1, 1).
pub fn uniform_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DenseMatrix {
    DenseMatrix::from_fn(rows, cols, |_, _| rng.random_range(-1.0..1.0)).unwrap()
}

pub fn uniform_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

/// Gaussian elimination with partial pivoting on a row-major system.
/// `None` when a pivot falls below `1e-12` times the largest entry.
pub fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return if n == 0 { Some(vec![]) } else { None };
    }
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))?;
        if a[p][k].abs() <= 1e-12 * scale {
            return None;
        }
        a.swap(k, p);
        b.swap(k, p);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
            b[i] -= f * b[k];
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| a[k][j] * x[j]).sum();
        x[k] = (b[k] - s) / a[k][k];
    }
    Some(x)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn l1(x: &[f64]) -> f64 {
    x.iter().map(|v| v.abs()).sum()
}

/// `min_c ‖b − A c‖₁` for `A` of full column rank: some minimizer
/// interpolates `cols` rows, so the minimum over all interpolating fits is
/// the answer.
pub fn l1_subset_oracle(a: &DenseMatrix, b: &[f64]) -> f64 {
    let (m, n) = a.shape();
    if n == 0 {
        return l1(b);
    }
    let mut best = f64::INFINITY;
    for rows in subsets(m, n) {
        let sys: Vec<Vec<f64>> = rows.iter().map(|&i| a.row(i)).collect();
        let rhs: Vec<f64> = rows.iter().map(|&i| b[i]).collect();
        if let Some(c) = gauss_solve(sys, rhs) {
            let r: f64 = (0..m)
                .map(|i| (b[i] - (0..n).map(|j| a.get(i, j) * c[j]).sum::<f64>()).abs())
                .sum();
            best = best.min(r);
        }
    }
    best
}

/// `min cᵀx` over `{G x ≤ h, x ≥ 0}` by enumerating every vertex.
/// `None` if the polyhedron has no vertex (empty, for the bounded
/// problems used in tests).
pub fn lp_vertex_oracle(c: &[f64], g: &DenseMatrix, h: &[f64]) -> Option<(f64, Vec<f64>)> {
    let n = c.len();
    let mut rows: Vec<(Vec<f64>, f64)> = (0..g.rows()).map(|i| (g.row(i), h[i])).collect();
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = -1.0;
        rows.push((e, 0.0));
    }
    let mut best: Option<(f64, Vec<f64>)> = None;
    for active in subsets(rows.len(), n) {
        let sys = active.iter().map(|&i| rows[i].0.clone()).collect();
        let rhs = active.iter().map(|&i| rows[i].1).collect();
        let Some(x) = gauss_solve(sys, rhs) else { continue };
        let feasible = rows
            .iter()
            .all(|(a, bi)| a.iter().zip(&x).map(|(u, v)| u * v).sum::<f64>() <= bi + 1e-9);
        if feasible {
            let val: f64 = c.iter().zip(&x).map(|(u, v)| u * v).sum();
            if best.as_ref().is_none_or(|(b, _)| val < *b) {
                best = Some((val, x));
            }
        }
    }
    best
}

pub fn max_abs_diff(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    a.as_slice().iter().zip(b.as_slice()).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}
