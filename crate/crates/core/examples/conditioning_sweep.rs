//! Condition of Q against the condition of A as A gets closer to singular.
//!
//! cargo run --release --example conditioning_sweep

use arrqr::gen::{synth_svd, SpectrumSpec};
use arrqr::{ConditionReport, NormSpec, rrqr_factor};

fn main() -> arrqr::Result<()> {
    let m = 10;
    println!("{:>8} {:>12} {:>10} {:>12}", "ratio", "cond_1(A)", "cond_1(Q)", "error");
    for e in 0..=6 {
        let ratio = 10f64.powi(-2 * e);
        for seed in 0..3 {
            let a = synth_svd(&SpectrumSpec::with_ratio(m, ratio)?, seed)?;
            let f = rrqr_factor(&a, &NormSpec::L1, 0.0, None)?;
            let r = ConditionReport::measure(&a, &f, ratio)?;
            println!("{:>8.0e} {:>12.3e} {:>10.2} {:>12.3e}", r.spectrum_ratio, r.cond_a, r.cond_q, r.error_1);
        }
    }
    Ok(())
}
