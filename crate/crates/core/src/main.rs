use std::path::PathBuf;
use std::process::ExitCode;

use arrqr::experiment::{cmd_factor, write_experiment, ExperimentConfig, ExperimentKind};
use arrqr::{Error, NormSpec};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "arrqr", version, about = "Rank-revealing QR in arbitrary norms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a CSV matrix and write Q.csv, R.csv and perm.csv.
    Factor {
        input: PathBuf,
        #[arg(long, default_value = "l1")]
        norm: NormSpec,
        #[arg(long, default_value_t = 0.0)]
        tol: f64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run one of the synthetic experiments and write its CSV.
    Experiment {
        /// diag-decay, cond-q, fact-error, lowrank or outlier
        kind: ExperimentKind,
        #[arg(long)]
        m: Option<usize>,
        /// Comma-separated sigma_min/sigma_max values.
        #[arg(long, value_delimiter = ',')]
        ratios: Option<Vec<f64>>,
        /// Comma-separated seeds.
        #[arg(long, value_delimiter = ',')]
        seeds: Option<Vec<u64>>,
        #[arg(long, default_value = "l1")]
        norm: NormSpec,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Factor { input, norm, tol, out } => {
            let summary = cmd_factor(&input, &norm, tol, &out)?;
            println!("{summary}");
        }
        Command::Experiment { kind, m, ratios, seeds, norm, out } => {
            let mut cfg = ExperimentConfig::new(kind);
            cfg.norm = norm;
            if let Some(m) = m {
                cfg.m = m;
            }
            if let Some(r) = ratios {
                cfg.ratios = r;
            }
            if let Some(s) = seeds {
                cfg.seeds = s;
            }
            write_experiment(&cfg, &out)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
