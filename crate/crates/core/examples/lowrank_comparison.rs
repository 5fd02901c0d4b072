//! Truncation error of the l1 factorization against classical pivoted QR
//! on a matrix with singular values log-spaced from 1 to 1e-6.
//!
//! cargo run --release --example lowrank_comparison

use arrqr::gen::{synth_svd, SpectrumSpec};
use arrqr::{classical_cpqr, lowrank_error_curve, rrqr_factor, NormSpec};

fn main() -> arrqr::Result<()> {
    let m = 60;
    let a = synth_svd(&SpectrumSpec::with_ratio(m, 1e-6)?, 0)?;
    let l1 = rrqr_factor(&a, &NormSpec::L1, 0.0, None)?;
    let l2 = classical_cpqr(&a)?;

    let ks: Vec<usize> = (1..=m).step_by(5).collect();
    let ours = lowrank_error_curve(&a, &l1, &ks)?;
    let theirs = lowrank_error_curve(&a, &l2, &ks)?;
    println!("{:>3} {:>12} {:>12} {:>7}", "k", "l1 rrqr", "classical", "ratio");
    for ((k, e1), (_, e2)) in ours.iter().zip(&theirs) {
        println!("{k:>3} {e1:>12.4e} {e2:>12.4e} {:>7.3}", e1 / e2);
    }
    Ok(())
}
