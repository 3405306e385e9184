//! Batch experiment runner: JSON configs in, CSV/JSON artifacts out.
//!
//! Every artifact is named `<prefix>.<kind>.csv` (or `.json`) and starts
//! with a `#` line holding the effective config and tool version; JSON
//! reports carry the same record under `_meta`.

mod config;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

pub use config::{CertifyMode, Experiment, ExperimentConfig};
pub use run::{run, Outcome};

/// Tool name and version written into artifact headers.
pub const TOOL: &str = concat!("hgrowth ", env!("CARGO_PKG_VERSION"));

/// Command line of the `hgrowth` binary.
#[derive(Debug, Parser)]
#[command(name = "hgrowth", version, about = "Growth of positive harmonic functions in unbounded domains")]
pub struct Args {
    /// JSON experiment config.
    #[arg(long)]
    pub config: PathBuf,
    /// Output prefix [default: config `output`, else the config path without extension].
    #[arg(long)]
    pub out: Option<String>,
    /// Random seed for walk-on-spheres [default: config `seed`, else 0].
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads [default: all cores].
    #[arg(long)]
    pub threads: Option<usize>,
    /// Constant C of the Huber lower bound [default: config `huber_c`, else 1].
    #[arg(long = "huber-c")]
    pub huber_c: Option<f64>,
}

/// Runs the command line; exit status 0 on success, 2 when a check fails
/// (certification or reciprocal bound), 1 on error.
pub fn main_with(args: Args) -> ExitCode {
    match execute(&args) {
        Ok(outcome) => {
            for line in &outcome.summary {
                println!("{line}");
            }
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn execute(args: &Args) -> crate::Result<Outcome> {
    if let Some(n) = args.threads {
        // A second initialisation (tests, embedding) keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let mut cfg = ExperimentConfig::load(&args.config)?;
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(c) = args.huber_c {
        cfg.huber_c = c;
    }
    if let Some(o) = &args.out {
        cfg.output = Some(o.clone());
    }
    if cfg.output.is_none() {
        cfg.output = Some(args.config.with_extension("").to_string_lossy().into_owned());
    }
    run(&cfg)
}
