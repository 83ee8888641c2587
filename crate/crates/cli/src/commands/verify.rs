use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use spanner_core::graph::{GeoGraph, GraphDocument};
use spanner_core::spanner::{wspd_of, Wspd};
use spanner_core::verify::{
    bounds_for_t, frechet_dilation, hausdorff_dilation, verify_t_spanner, BoundSet, DilationReport, PathPolicy,
    SweepOptions, DEFAULT_EXHAUSTIVE_CAP,
};

use super::build::RepArg;
use super::{read_json, write_json, Outcome};
use crate::error::CliError;

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Graph JSON
    #[arg(long)]
    pub graph: PathBuf,
    /// Check that the graph is a t-spanner
    #[arg(long)]
    pub t: Option<f64>,
    /// Check Hausdorff dilation against EPS
    #[arg(long, value_name = "EPS")]
    pub hausdorff: Option<f64>,
    /// Check Frechet dilation against EPS
    #[arg(long, value_name = "EPS")]
    pub frechet: Option<f64>,
    /// Check stretch, Hausdorff and Frechet against the bounds implied by T
    #[arg(long, value_name = "T")]
    pub bounds_for_t: Option<f64>,
    /// Measure Hausdorff distance in both directions
    #[arg(long)]
    pub symmetric_hausdorff: bool,
    /// Check K random pairs instead of all pairs
    #[arg(long, value_name = "K")]
    pub sampled: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Absolute tolerance on ratios
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Graphs with more vertices are sampled
    #[arg(long, env = "SPANNER_MAX_N", default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
    pub max_n: usize,
    /// Measure dilation on the recursive WSPD paths; rebuilds the WSPD from
    /// the graph metadata
    #[arg(long)]
    pub wspd_paths: bool,
    /// Keep every pair's ratio in the report
    #[arg(long)]
    pub per_pair: bool,
    /// Report JSON; stdout if absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
pub struct VerifyOutput {
    pub vertices: usize,
    pub edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundSet>,
    pub checks: Vec<DilationReport>,
    pub passed: bool,
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::usage(format!("--{name} must be positive, got {v}")))
    }
}

/// Rebuilds the WSPD a graph was built from, using its metadata.
fn wspd_from_metadata(doc: &GraphDocument, graph: &GeoGraph) -> Result<Wspd, CliError> {
    let meta = doc.metadata.as_ref();
    let get = |key: &str| meta.and_then(|m| m.get(key));
    if get("method").and_then(|v| v.as_str()) != Some("wspd") {
        return Err(CliError::usage("--wspd-paths needs a graph built with --method wspd"));
    }
    let s = get("s")
        .and_then(|v| v.as_f64())
        .ok_or_else(|| CliError::usage("graph metadata has no separation `s`"))?;
    let rep = match get("representative").and_then(|v| v.as_str()) {
        Some(name) => RepArg::parse(name).ok_or_else(|| CliError::usage(format!("unknown representative `{name}`")))?,
        None => RepArg::LowestIndex,
    };
    let wspd = wspd_of(graph.vertices(), s, rep.policy())?;
    for p in &wspd.pairs {
        if !graph.has_edge(p.rep_a, p.rep_b) {
            return Err(CliError::usage(format!(
                "graph lacks the WSPD edge ({}, {}); it was not built from this decomposition",
                p.rep_a, p.rep_b
            )));
        }
    }
    Ok(wspd)
}

pub fn run(args: &VerifyArgs) -> Result<Outcome, CliError> {
    if args.t.is_none() && args.hausdorff.is_none() && args.frechet.is_none() && args.bounds_for_t.is_none() {
        return Err(CliError::usage(
            "nothing to check; give --t, --hausdorff, --frechet or --bounds-for-t",
        ));
    }
    let tol = positive("tol", args.tol)?;
    let doc: GraphDocument = read_json(&args.graph)?;
    let graph = GeoGraph::from_document(&doc)?;
    let wspd = if args.wspd_paths { Some(wspd_from_metadata(&doc, &graph)?) } else { None };
    let policy = wspd.as_ref().map_or(PathPolicy::ShortestPath, PathPolicy::Wspd);
    let opts = SweepOptions {
        tolerance: tol,
        symmetric: args.symmetric_hausdorff,
        exhaustive_cap: args.max_n,
        sample: args.sampled,
        seed: args.seed,
        keep_per_pair: args.per_pair,
    };

    let bounds = args.bounds_for_t.map(bounds_for_t).transpose()?;
    let stretch_t = args.t.or(bounds.map(|b| b.t));
    let hausdorff_eps = match args.hausdorff {
        Some(e) => Some(positive("hausdorff", e)?),
        None => bounds.map(|b| b.hausdorff_bound),
    };
    let frechet_eps = match args.frechet {
        Some(e) => Some(positive("frechet", e)?),
        None if wspd.is_some() => bounds.map(|b| b.wspd_frechet_bound),
        None => bounds.map(|b| b.frechet_bound),
    };

    let mut checks = Vec::new();
    if let Some(t) = stretch_t {
        checks.push(verify_t_spanner(&graph, t, &opts)?);
    }
    if let Some(eps) = hausdorff_eps {
        checks.push(hausdorff_dilation(&graph, policy, &opts)?.with_bound(eps));
    }
    if let Some(eps) = frechet_eps {
        checks.push(frechet_dilation(&graph, policy, &opts)?.with_bound(eps));
    }
    let passed = checks.iter().all(|c| c.passed == Some(true));
    for c in &checks {
        eprintln!(
            "{:?}: max ratio {:.6} (bound {}) {}",
            c.kind,
            c.max_ratio,
            c.bound.map_or("-".into(), |b| format!("{b:.6}")),
            if c.passed == Some(true) { "ok" } else { "FAILED" }
        );
    }
    let out = VerifyOutput {
        vertices: graph.len(),
        edges: graph.edge_count(),
        bounds,
        checks,
        passed,
    };
    write_json(args.out.as_deref(), &out)?;
    Ok(Outcome::from_passed(passed))
}
