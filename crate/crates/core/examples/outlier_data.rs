//! Pivot choices on smooth rank-3 data before and after two entries are
//! scaled by 100, with truncation errors measured against the clean data.
//!
//! cargo run --release --example outlier_data [seed]

use arrqr::experiment::{outlier_run, ExperimentConfig, ExperimentKind};

fn main() -> arrqr::Result<()> {
    let seed = std::env::args().nth(1).map_or(0, |s| s.parse().expect("seed must be an integer"));
    let cfg = ExperimentConfig::new(ExperimentKind::Outlier);
    let run = outlier_run(&cfg, seed)?;

    println!("corrupted entries (row, col): {:?}", run.positions);
    println!(
        "{:>2} | {:>9} {:>9} | {:>9} {:>9} | {:>10} {:>10}",
        "k", "l1 clean", "cl clean", "l1 dirty", "cl dirty", "l1 err", "cl err"
    );
    for row in &run.rows {
        println!(
            "{:>2} | {:>9} {:>9} | {:>9} {:>9} | {:>10.3e} {:>10.3e}",
            row.k, row.pivots[0], row.pivots[1], row.pivots[2], row.pivots[3], row.errors[2], row.errors[3]
        );
    }
    Ok(())
}
