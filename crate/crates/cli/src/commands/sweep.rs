use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use spanner_core::koch::{koch_graph, lemma_sweep};
use spanner_core::pointset::generate;
use spanner_core::spanner::{path_greedy_spanner, separation_for_stretch, wspd_spanner, RepresentativePolicy};
use spanner_core::verify::{
    bounds_for_t, frechet_dilation, hausdorff_dilation, verify_t_spanner, PathPolicy, SweepOptions,
    DEFAULT_EXHAUSTIVE_CAP,
};

use super::build::Method;
use super::koch::KOCH_DILATION_BOUND;
use super::{write_output, Outcome};
use crate::config::{DistributionArg, ExperimentConfig};
use crate::error::CliError;

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Comma-separated stretch factors
    #[arg(long, value_delimiter = ',', conflicts_with = "koch_n")]
    pub t: Vec<f64>,
    /// Comma-separated Koch generations
    #[arg(long, value_delimiter = ',')]
    pub koch_n: Vec<u32>,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "uniform-square")]
    pub distribution: DistributionArg,
    #[arg(long, value_enum, default_value = "greedy")]
    pub method: Method,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, env = "SPANNER_MAX_N", default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
    pub max_n: usize,
    /// CSV output; stdout if absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct StretchRow {
    t: f64,
    hausdorff_bound: f64,
    frechet_bound: f64,
    wspd_frechet_bound: f64,
    edges: usize,
    max_stretch: f64,
    hausdorff_dilation: f64,
    frechet_dilation: f64,
    passed: bool,
}

#[derive(Debug, Serialize)]
struct KochRow {
    n: u32,
    vertices: usize,
    extreme_stretch: f64,
    hausdorff_dilation: f64,
    frechet_dilation: f64,
    bound: f64,
    passed: bool,
}

fn to_csv<T: Serialize>(rows: &[T], header: &[&str]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    let io = |e: csv::Error| CliError::usage(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.serialize(r).map_err(io)?;
    }
    w.into_inner().map_err(|e| CliError::usage(format!("csv: {e}")))
}

const STRETCH_HEADER: [&str; 9] = [
    "t",
    "hausdorff_bound",
    "frechet_bound",
    "wspd_frechet_bound",
    "edges",
    "max_stretch",
    "hausdorff_dilation",
    "frechet_dilation",
    "passed",
];
const KOCH_HEADER: [&str; 7] = [
    "n",
    "vertices",
    "extreme_stretch",
    "hausdorff_dilation",
    "frechet_dilation",
    "bound",
    "passed",
];

pub fn run(args: &SweepArgs) -> Result<Outcome, CliError> {
    let cfg = ExperimentConfig {
        seed: args.seed,
        n: args.n,
        distribution: args.distribution.into(),
        tolerance: args.tol,
        out: args.out.clone(),
        ..Default::default()
    };
    let opts = SweepOptions {
        tolerance: cfg.tolerance,
        exhaustive_cap: args.max_n,
        seed: cfg.seed,
        ..Default::default()
    };
    let (bytes, passed) = if !args.koch_n.is_empty() {
        let mut rows = Vec::new();
        for &n in &args.koch_n {
            let k = koch_graph(n)?;
            let lemmas = lemma_sweep(&k);
            let f = frechet_dilation(k.graph(), PathPolicy::ShortestPath, &opts)?.with_bound(KOCH_DILATION_BOUND);
            let h = lemmas.max_symmetric_ratio.value;
            rows.push(KochRow {
                n,
                vertices: k.len(),
                extreme_stretch: k.extreme_stretch(),
                hausdorff_dilation: h,
                frechet_dilation: f.max_ratio,
                bound: KOCH_DILATION_BOUND,
                passed: f.passed == Some(true) && h <= KOCH_DILATION_BOUND + cfg.tolerance,
            });
        }
        let passed = rows.iter().all(|r| r.passed);
        (to_csv(&rows, &KOCH_HEADER)?, passed)
    } else {
        let points = generate(cfg.n, cfg.distribution, cfg.seed);
        let mut rows = Vec::new();
        for &t in &args.t {
            let bounds = bounds_for_t(t).map_err(|_| CliError::usage(format!("--t must satisfy t >= 1, got {t}")))?;
            let graph = match args.method {
                Method::Greedy => path_greedy_spanner(&points, t)?,
                Method::Wspd => {
                    let s = separation_for_stretch(t)
                        .map_err(|_| CliError::usage(format!("wspd sweeps need t > 1, got {t}")))?;
                    wspd_spanner(&points, s, RepresentativePolicy::default())?.0
                }
            };
            let s = verify_t_spanner(&graph, t, &opts)?;
            let h = hausdorff_dilation(&graph, PathPolicy::ShortestPath, &opts)?.with_bound(bounds.hausdorff_bound);
            let f = frechet_dilation(&graph, PathPolicy::ShortestPath, &opts)?.with_bound(bounds.frechet_bound);
            let passed = [&s, &h, &f].iter().all(|r| r.passed == Some(true));
            rows.push(StretchRow {
                t,
                hausdorff_bound: bounds.hausdorff_bound,
                frechet_bound: bounds.frechet_bound,
                wspd_frechet_bound: bounds.wspd_frechet_bound,
                edges: graph.edge_count(),
                max_stretch: s.max_ratio,
                hausdorff_dilation: h.max_ratio,
                frechet_dilation: f.max_ratio,
                passed,
            });
        }
        let passed = rows.iter().all(|r| r.passed);
        (to_csv(&rows, &STRETCH_HEADER)?, passed)
    };
    write_output(cfg.out.as_deref(), &bytes)?;
    Ok(Outcome::from_passed(passed))
}
