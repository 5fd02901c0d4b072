//! End-to-end experiment drivers and the one-shot `factor` command behind the
//! `arrqr` binary. Every driver returns its CSV as a string so runs can be
//! compared byte for byte.

use std::fmt;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::analysis::{cond_1, factorization_error, lowrank_error_curve, residual_1norm};
use crate::csvio::{format_value, read_matrix, write_matrix};
use crate::error::{Error, Result};
use crate::gen::{inject_outliers, smooth_lowrank, synth_svd, OutlierSpec, SpectrumSpec};
use crate::matrix::{induced_1norm, DenseMatrix};
use crate::norm::NormSpec;
use crate::rrqr::{classical_cpqr, rrqr_factor, truncate_against, Factorization};

/// Mixed into the data seed to pick outlier positions.
pub const OUTLIER_SEED_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentKind {
    /// `(ratio, seed, j, R(j,j))` for each pivot.
    DiagDecay,
    /// `(ratio, seed, cond_A, cond_Q)`.
    CondQ,
    /// `(ratio, seed, cond_A, error_1)`.
    FactError,
    /// `(seed, k, err_rrqr, err_cpqr)` for `k = 1..=max_k`.
    LowRank,
    /// Pivots and truncation errors on clean and corrupted smooth data.
    Outlier,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::DiagDecay => "diag-decay",
            ExperimentKind::CondQ => "cond-q",
            ExperimentKind::FactError => "fact-error",
            ExperimentKind::LowRank => "lowrank",
            ExperimentKind::Outlier => "outlier",
        }
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "diag-decay" => ExperimentKind::DiagDecay,
            "cond-q" => ExperimentKind::CondQ,
            "fact-error" => ExperimentKind::FactError,
            "lowrank" => ExperimentKind::LowRank,
            "outlier" => ExperimentKind::Outlier,
            other => return Err(Error::InvalidArgument(format!("unknown experiment '{other}'"))),
        })
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub m: usize,
    /// `σ_min/σ_max` of the generated inputs. Ignored by `Outlier`.
    pub ratios: Vec<f64>,
    pub seeds: Vec<u64>,
    pub norm: NormSpec,
    pub rel_tol: f64,
    /// Largest truncation rank reported by `LowRank` and `Outlier`.
    pub max_k: usize,
    /// Rank of the clean data for `Outlier`.
    pub data_rank: usize,
    pub outlier_count: usize,
    pub outlier_factor: f64,
}

impl ExperimentConfig {
    /// Defaults: `m = 10` for the diagonal and conditioning sweeps,
    /// `m = 100` with `σ_min = 10⁻⁶` and `k ≤ 60` for the low-rank curve,
    /// rank-3 50×50 data with two ×100 outliers for `Outlier`.
    pub fn new(kind: ExperimentKind) -> Self {
        let (m, ratios, seeds): (usize, Vec<f64>, Vec<u64>) = match kind {
            ExperimentKind::DiagDecay => (10, vec![1e-2, 1e-6, 1e-12], vec![0]),
            ExperimentKind::CondQ | ExperimentKind::FactError => {
                (10, (0..=6).map(|e| 10f64.powi(-2 * e)).collect(), (0..10).collect())
            }
            ExperimentKind::LowRank => (100, vec![1e-6], vec![0]),
            ExperimentKind::Outlier => (50, vec![1.0], vec![0]),
        };
        Self {
            kind,
            m,
            ratios,
            seeds,
            norm: NormSpec::L1,
            rel_tol: 0.0,
            max_k: if kind == ExperimentKind::Outlier { 5 } else { 60 },
            data_rank: 3,
            outlier_count: 2,
            outlier_factor: 100.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.seeds.is_empty() {
            return Err(Error::InvalidArgument("at least one seed is required".into()));
        }
        if self.m < 2 {
            return Err(Error::InvalidArgument(format!("m must be at least 2, got {}", self.m)));
        }
        if self.ratios.is_empty() || self.ratios.iter().any(|r| !(*r > 0.0 && *r <= 1.0)) {
            return Err(Error::InvalidArgument(format!(
                "spectrum ratios must lie in (0, 1], got {:?}",
                self.ratios
            )));
        }
        if self.rel_tol.is_nan() || self.rel_tol < 0.0 {
            return Err(Error::InvalidArgument("tolerance must be >= 0".into()));
        }
        if self.max_k == 0 {
            return Err(Error::InvalidArgument("max_k must be positive".into()));
        }
        if self.kind == ExperimentKind::Outlier {
            if self.data_rank > self.m {
                return Err(Error::InvalidArgument("data rank exceeds m".into()));
            }
            OutlierSpec::new(self.outlier_count, self.outlier_factor, 0)?;
        }
        Ok(())
    }
}

fn factor(a: &DenseMatrix, cfg: &ExperimentConfig) -> Result<Factorization> {
    rrqr_factor(a, &cfg.norm, cfg.rel_tol, None)
}

fn synth(cfg: &ExperimentConfig, ratio: f64, seed: u64) -> Result<DenseMatrix> {
    synth_svd(&SpectrumSpec::with_ratio(cfg.m, ratio)?, seed)
}

/// Runs the configured experiment and returns its CSV (with header).
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<String> {
    cfg.validate()?;
    let mut out = String::new();
    let v = format_value;
    match cfg.kind {
        ExperimentKind::DiagDecay => {
            out.push_str("ratio,seed,j,r_jj\n");
            for &ratio in &cfg.ratios {
                for &seed in &cfg.seeds {
                    let f = factor(&synth(cfg, ratio, seed)?, cfg)?;
                    for (j, g) in f.gammas().iter().enumerate() {
                        writeln!(out, "{},{seed},{j},{}", v(ratio), v(*g)).unwrap();
                    }
                }
            }
        }
        ExperimentKind::CondQ | ExperimentKind::FactError => {
            let cond_q = cfg.kind == ExperimentKind::CondQ;
            out.push_str(if cond_q {
                "ratio,seed,cond_a,cond_q\n"
            } else {
                "ratio,seed,cond_a,error_1\n"
            });
            for &ratio in &cfg.ratios {
                for &seed in &cfg.seeds {
                    let a = synth(cfg, ratio, seed)?;
                    let f = factor(&a, cfg)?;
                    let second = if cond_q {
                        cond_1(f.q())?
                    } else {
                        factorization_error(&a, &f)?
                    };
                    writeln!(out, "{},{seed},{},{}", v(ratio), v(cond_1(&a)?), v(second)).unwrap();
                }
            }
        }
        ExperimentKind::LowRank => {
            out.push_str("seed,k,err_rrqr,err_cpqr\n");
            let ratio = cfg.ratios[0];
            for &seed in &cfg.seeds {
                let a = synth(cfg, ratio, seed)?;
                let f = factor(&a, cfg)?;
                let c = classical_cpqr(&a)?;
                let kmax = cfg.max_k.min(f.rank()).min(c.rank());
                let ks: Vec<usize> = (1..=kmax).collect();
                let ours = lowrank_error_curve(&a, &f, &ks)?;
                let theirs = lowrank_error_curve(&a, &c, &ks)?;
                for ((k, e1), (_, e2)) in ours.iter().zip(&theirs) {
                    writeln!(out, "{seed},{k},{},{}", v(*e1), v(*e2)).unwrap();
                }
            }
        }
        ExperimentKind::Outlier => {
            out.push_str(
                "seed,k,outlier_cols,pivot_rrqr_clean,pivot_cpqr_clean,pivot_rrqr_corrupt,pivot_cpqr_corrupt,\
                 err_rrqr_clean,err_cpqr_clean,err_rrqr_corrupt,err_cpqr_corrupt\n",
            );
            for &seed in &cfg.seeds {
                let run = outlier_run(cfg, seed)?;
                let cols: Vec<String> = run.outlier_cols.iter().map(|c| c.to_string()).collect();
                for row in &run.rows {
                    writeln!(
                        out,
                        "{seed},{},{},{},{},{},{},{},{},{},{}",
                        row.k,
                        cols.join(";"),
                        row.pivots[0],
                        row.pivots[1],
                        row.pivots[2],
                        row.pivots[3],
                        v(row.errors[0]),
                        v(row.errors[1]),
                        v(row.errors[2]),
                        v(row.errors[3]),
                    )
                    .unwrap();
                }
            }
        }
    }
    Ok(out)
}

/// One `k` of an outlier run. Pivot and error arrays are ordered
/// rrqr-clean, cpqr-clean, rrqr-corrupt, cpqr-corrupt; errors are always
/// measured against the clean data.
#[derive(Clone, Debug, PartialEq)]
pub struct OutlierRow {
    pub k: usize,
    pub pivots: [usize; 4],
    pub errors: [f64; 4],
}

#[derive(Clone, Debug, PartialEq)]
pub struct OutlierRun {
    pub positions: Vec<(usize, usize)>,
    /// Distinct columns holding an outlier, ascending.
    pub outlier_cols: Vec<usize>,
    pub rows: Vec<OutlierRow>,
}

/// Factors clean smooth data and a corrupted copy with both the configured
/// norm and classical pivoted QR.
pub fn outlier_run(cfg: &ExperimentConfig, seed: u64) -> Result<OutlierRun> {
    let clean = smooth_lowrank(cfg.m, cfg.m, cfg.data_rank, seed)?;
    let spec = OutlierSpec::new(cfg.outlier_count, cfg.outlier_factor, seed ^ OUTLIER_SEED_SALT)?;
    let (dirty, positions) = inject_outliers(&clean, &spec)?;
    let mut outlier_cols: Vec<usize> = positions.iter().map(|&(_, j)| j).collect();
    outlier_cols.sort_unstable();
    outlier_cols.dedup();

    let facts = [
        factor(&clean, cfg)?,
        classical_cpqr(&clean)?,
        factor(&dirty, cfg)?,
        classical_cpqr(&dirty)?,
    ];
    let kmax = facts.iter().map(Factorization::rank).min().unwrap_or(0).min(cfg.max_k);
    let mut rows = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        let mut errors = [0.0; 4];
        for (e, f) in errors.iter_mut().zip(&facts) {
            *e = truncate_against(f, k, &clean)?.error_1norm.expect("error requested");
        }
        rows.push(OutlierRow {
            k,
            pivots: std::array::from_fn(|i| facts[i].perm().as_slice()[k - 1]),
            errors,
        });
    }
    Ok(OutlierRun {
        positions,
        outlier_cols,
        rows,
    })
}

/// Runs the experiment and writes the CSV to `path`.
pub fn write_experiment(cfg: &ExperimentConfig, path: impl AsRef<Path>) -> Result<()> {
    let csv = run_experiment(cfg)?;
    std::fs::write(path, csv)?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorSummary {
    pub rank: usize,
    pub gamma_first: f64,
    pub gamma_last: f64,
    /// `‖A·P − Q·R‖₁ / ‖A‖₁`.
    pub rel_error: f64,
}

impl fmt::Display for FactorSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rank={} gamma_first={} gamma_last={} rel_error={:e}",
            self.rank,
            format_value(self.gamma_first),
            format_value(self.gamma_last),
            self.rel_error
        )
    }
}

/// Factors the matrix in `input` and writes `Q.csv`, `R.csv` and `perm.csv`
/// into `out_dir`.
pub fn cmd_factor(input: &Path, norm: &NormSpec, rel_tol: f64, out_dir: &Path) -> Result<FactorSummary> {
    let a = read_matrix(input)?;
    let f = rrqr_factor(&a, norm, rel_tol, None)?;
    std::fs::create_dir_all(out_dir)?;
    write_matrix(out_dir.join("Q.csv"), f.q())?;
    write_matrix(out_dir.join("R.csv"), f.r())?;
    let perm: Vec<String> = f.perm().as_slice().iter().map(|p| p.to_string()).collect();
    std::fs::write(out_dir.join("perm.csv"), format!("{}\n", perm.join(",")))?;
    let scale = induced_1norm(&a);
    let err = residual_1norm(&a, &f)?;
    Ok(FactorSummary {
        rank: f.rank(),
        gamma_first: f.gammas().first().copied().unwrap_or(0.0),
        gamma_last: f.gammas().last().copied().unwrap_or(0.0),
        rel_error: if scale > 0.0 { err / scale } else { 0.0 },
    })
}
