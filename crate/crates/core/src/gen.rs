//! Seeded synthetic inputs: Haar-random orthogonal matrices, matrices with a
//! prescribed singular spectrum, smooth low-rank data and outlier injection.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`; normal
//! variates use `rand_distr::StandardNormal`. Outputs depend only on the
//! arguments, so a seed reproduces a matrix bit for bit.

use std::f64::consts::PI;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::householder::HouseholderQr;
use crate::matrix::{matmul, DenseMatrix};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Spacing {
    /// `σ_i = σ_max·(σ_min/σ_max)^{i/(m−1)}`.
    #[default]
    LogSpaced,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumSpec {
    pub m: usize,
    pub sigma_max: f64,
    pub sigma_min: f64,
    pub spacing: Spacing,
}

impl SpectrumSpec {
    pub fn new(m: usize, sigma_max: f64, sigma_min: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("spectrum dimension must be positive".into()));
        }
        if !(sigma_min > 0.0 && sigma_min <= sigma_max && sigma_max.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "need 0 < sigma_min <= sigma_max, got {sigma_min} and {sigma_max}"
            )));
        }
        Ok(Self {
            m,
            sigma_max,
            sigma_min,
            spacing: Spacing::LogSpaced,
        })
    }

    /// Unit top singular value and `sigma_min = ratio`.
    pub fn with_ratio(m: usize, ratio: f64) -> Result<Self> {
        Self::new(m, 1.0, ratio)
    }

    pub fn singular_values(&self) -> Vec<f64> {
        if self.m == 1 {
            return vec![self.sigma_max];
        }
        let ratio = self.sigma_min / self.sigma_max;
        (0..self.m)
            .map(|i| self.sigma_max * ratio.powf(i as f64 / (self.m - 1) as f64))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OutlierSpec {
    pub count: usize,
    pub magnitude_factor: f64,
    pub seed: u64,
}

impl OutlierSpec {
    pub fn new(count: usize, magnitude_factor: f64, seed: u64) -> Result<Self> {
        if !(magnitude_factor >= 1.0 && magnitude_factor.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "outlier factor must be >= 1, got {magnitude_factor}"
            )));
        }
        Ok(Self {
            count,
            magnitude_factor,
            seed,
        })
    }
}

fn gaussian(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DenseMatrix {
    let data = (0..rows * cols).map(|_| rng.sample(StandardNormal)).collect();
    DenseMatrix::from_parts(rows, cols, data)
}

fn haar_orthogonal(rng: &mut ChaCha8Rng, m: usize) -> DenseMatrix {
    let qr = HouseholderQr::factor(&gaussian(rng, m, m));
    let mut q = qr.q_thin();
    // Fixing sign(R_kk) > 0 makes the distribution Haar.
    for k in 0..m {
        if qr.r_diag(k) < 0.0 {
            for v in q.col_mut(k) {
                *v = -*v;
            }
        }
    }
    q
}

/// Orthogonal `m × m` matrix from the QR factorization of a seeded
/// standard-normal matrix.
pub fn random_orthogonal(m: usize, seed: u64) -> Result<DenseMatrix> {
    if m == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    Ok(haar_orthogonal(&mut rng_from_seed(seed), m))
}

/// `U·diag(σ)·Vᵀ` with independent random orthogonal `U`, `V` and the
/// spectrum from `spec`.
pub fn synth_svd(spec: &SpectrumSpec, seed: u64) -> Result<DenseMatrix> {
    let mut rng = rng_from_seed(seed);
    let u = haar_orthogonal(&mut rng, spec.m);
    let v = haar_orthogonal(&mut rng, spec.m);
    let sigma = spec.singular_values();
    let mut us = u;
    for (k, s) in sigma.iter().enumerate() {
        for x in us.col_mut(k) {
            *x *= s;
        }
    }
    matmul(&us, &v.transpose())
}

/// Sum of `rank` separable smooth terms `sin(π(l+1)xᵢ + φ_l)·cos(π(l+1)y_j + ψ_l)`
/// on uniform grids over [0, 1], with seeded phases. The result has exact
/// rank `rank` for grids of moderate size.
pub fn smooth_lowrank(m: usize, n: usize, rank: usize, seed: u64) -> Result<DenseMatrix> {
    if rank > m.min(n) {
        return Err(Error::InvalidArgument(format!(
            "rank {rank} exceeds min({m}, {n})"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let phases: Vec<(f64, f64)> = (0..rank)
        .map(|_| (2.0 * PI * rng.random::<f64>(), 2.0 * PI * rng.random::<f64>()))
        .collect();
    let grid = |i: usize, len: usize| if len > 1 { i as f64 / (len - 1) as f64 } else { 0.0 };
    DenseMatrix::from_fn(m, n, |i, j| {
        let (x, y) = (grid(i, m), grid(j, n));
        phases
            .iter()
            .enumerate()
            .map(|(l, (phi, psi))| {
                let w = PI * (l + 1) as f64;
                (w * x + phi).sin() * (w * y + psi).cos()
            })
            .sum()
    })
}

/// Multiplies `spec.count` distinct, seeded-random entries of `a` by
/// `spec.magnitude_factor`. Returns the corrupted matrix and the
/// `(row, col)` positions touched, sorted.
pub fn inject_outliers(a: &DenseMatrix, spec: &OutlierSpec) -> Result<(DenseMatrix, Vec<(usize, usize)>)> {
    let (m, n) = a.shape();
    if spec.count > m * n {
        return Err(Error::InvalidArgument(format!(
            "{} outliers requested for {} entries",
            spec.count,
            m * n
        )));
    }
    let mut rng = rng_from_seed(spec.seed);
    let mut positions: Vec<(usize, usize)> = index::sample(&mut rng, m * n, spec.count)
        .into_iter()
        .map(|p| (p % m, p / m))
        .collect();
    positions.sort_unstable();
    let mut out = a.clone();
    for &(i, j) in &positions {
        out.set(i, j, a.get(i, j) * spec.magnitude_factor);
    }
    let out = DenseMatrix::from_col_major(m, n, out.as_slice().to_vec())?;
    Ok((out, positions))
}
