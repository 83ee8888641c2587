use std::path::PathBuf;

use clap::Args;
use spanner_core::pointset::{generate, write_points};

use super::{write_output, Outcome};
use crate::config::{DistributionArg, ExperimentConfig};
use crate::error::CliError;

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Number of points
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "uniform-square")]
    pub distribution: DistributionArg,
    /// Output CSV; stdout if absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl GenArgs {
    fn config(&self) -> ExperimentConfig {
        ExperimentConfig {
            seed: self.seed,
            n: self.n,
            distribution: self.distribution.into(),
            out: self.out.clone(),
            ..Default::default()
        }
    }
}

pub fn run(args: &GenArgs) -> Result<Outcome, CliError> {
    let cfg = args.config();
    if cfg.n == 0 {
        eprintln!("warning: --n 0 writes a header-only file");
    }
    let points = generate(cfg.n, cfg.distribution, cfg.seed);
    let mut buf = Vec::new();
    write_points(&mut buf, &points)?;
    write_output(cfg.out.as_deref(), &buf)?;
    Ok(Outcome::Pass)
}
