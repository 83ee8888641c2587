use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use serde_json::json;
use spanner_core::koch::{
    check_edge_levels, check_rectangles, check_three_between, koch_graph_with_limit, lemma_sweep, KochGraph,
    LemmaReport, StructureViolation, DEFAULT_MAX_GENERATION,
};
use spanner_core::verify::{frechet_dilation, verify_t_spanner, DilationReport, PathPolicy, SweepOptions, DEFAULT_EXHAUSTIVE_CAP};

use super::{write_json, write_output, Outcome};
use crate::error::CliError;
use crate::svg::{render, Figure};

/// Constant bounding the Hausdorff and Frechet dilation of every `F_n`.
pub const KOCH_DILATION_BOUND: f64 = 6.0;

/// Rectangle checks are quadratic in the stride; deeper levels are skipped.
const RECTANGLE_LEVELS: u32 = 4;

#[derive(Debug, Args)]
pub struct KochArgs {
    /// Generation
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = DEFAULT_MAX_GENERATION)]
    pub max_generation: u32,
    /// Write the graph JSON here
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write an SVG drawing here
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Color the SVG by vertex level and record levels in the graph metadata
    #[arg(long)]
    pub levels: bool,
    /// Decide whether F_n is a T-spanner; exits 1 if it is not
    #[arg(long, value_name = "T")]
    pub check_t: Option<f64>,
    /// Write the check report here; stdout if absent
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Skip the all-pairs Frechet sweep
    #[arg(long)]
    pub no_frechet: bool,
    /// Check K random pairs in the Frechet sweep
    #[arg(long, value_name = "K")]
    pub sampled: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, env = "SPANNER_MAX_N", default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
    pub max_n: usize,
}

#[derive(Debug, Serialize)]
pub struct TCheck {
    pub t: f64,
    pub is_t_spanner: bool,
    pub stretch: DilationReport,
}

#[derive(Debug, Serialize)]
pub struct KochReport {
    pub n: u32,
    pub vertices: usize,
    pub edges: usize,
    pub total_length: f64,
    pub extreme_stretch: f64,
    pub structure_violations: Vec<StructureViolation>,
    pub lemmas: LemmaReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frechet: Option<DilationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_check: Option<TCheck>,
    pub passed: bool,
}

fn check_t(k: &KochGraph, t: f64, opts: &SweepOptions) -> Result<TCheck, CliError> {
    if !(t >= 1.0) || !t.is_finite() {
        return Err(CliError::usage(format!("--check-t must satisfy t >= 1, got {t}")));
    }
    let mut stretch = verify_t_spanner(k.graph(), t, opts)?;
    // the extremes alone refute t below (4/3)^n, even when the sweep samples
    let extreme = k.extreme_stretch();
    if extreme > stretch.max_ratio {
        stretch.max_ratio = extreme;
        stretch.witness_pair = Some((0, k.len() - 1));
        stretch.witness_path = Some((0..k.len()).collect());
        stretch = stretch.with_bound(t);
    }
    Ok(TCheck {
        t,
        is_t_spanner: stretch.passed == Some(true),
        stretch,
    })
}

pub fn run(args: &KochArgs) -> Result<Outcome, CliError> {
    let k = koch_graph_with_limit(args.n, args.max_generation)?;
    let opts = SweepOptions {
        tolerance: args.tol,
        exhaustive_cap: args.max_n,
        sample: args.sampled,
        seed: args.seed,
        ..Default::default()
    };
    if let Some(path) = &args.out {
        let mut doc = k.graph().to_document();
        let mut meta = serde_json::Map::new();
        meta.insert("method".into(), json!("koch"));
        meta.insert("generation".into(), json!(args.n));
        if args.levels {
            meta.insert("levels".into(), json!(k.levels()));
        }
        doc.metadata = Some(meta);
        write_json(Some(path), &doc)?;
    }
    if let Some(path) = &args.svg {
        let fig = Figure {
            graph: k.graph(),
            levels: args.levels.then(|| k.levels()),
            title: format!("F_{}", args.n),
        };
        write_output(Some(path), render(&fig).as_bytes())?;
    }

    let mut structure = check_edge_levels(&k);
    structure.extend(check_three_between(&k));
    structure.extend(check_rectangles(&k, RECTANGLE_LEVELS));
    let lemmas = lemma_sweep(&k);
    let frechet = if args.no_frechet {
        None
    } else {
        Some(frechet_dilation(k.graph(), PathPolicy::ShortestPath, &opts)?.with_bound(KOCH_DILATION_BOUND))
    };
    let t_check = args.check_t.map(|t| check_t(&k, t, &opts)).transpose()?;

    let hausdorff_ok = lemmas.max_symmetric_ratio.value <= KOCH_DILATION_BOUND + args.tol;
    let passed = structure.is_empty()
        && lemmas.passed()
        && hausdorff_ok
        && frechet.as_ref().is_none_or(|f| f.passed == Some(true))
        && t_check.as_ref().is_none_or(|c| c.is_t_spanner);

    eprintln!(
        "F_{}: {} vertices, extreme stretch {:.6}, max symmetric Hausdorff ratio {:.6}",
        args.n,
        k.len(),
        k.extreme_stretch(),
        lemmas.max_symmetric_ratio.value
    );
    if let Some(f) = &frechet {
        eprintln!("F_{}: max Frechet ratio {:.6}", args.n, f.max_ratio);
    }
    if !structure.is_empty() || !lemmas.passed() {
        eprintln!(
            "F_{}: {} structural and {} lemma violations",
            args.n,
            structure.len(),
            lemmas.hausdorff_violations.len() + lemmas.distance_violations.len()
        );
    }
    if let Some(c) = &t_check {
        let (u, v) = c.stretch.witness_pair.unwrap_or((0, 0));
        if c.is_t_spanner {
            eprintln!("F_{} is a {}-spanner (max stretch {:.6})", args.n, c.t, c.stretch.max_ratio);
        } else {
            eprintln!(
                "F_{} is not a {}-spanner: stretch {:.6} between {u} and {v}",
                args.n, c.t, c.stretch.max_ratio
            );
        }
    }

    let report = KochReport {
        n: args.n,
        vertices: k.len(),
        edges: k.graph().edge_count(),
        total_length: k.graph().total_weight(),
        extreme_stretch: k.extreme_stretch(),
        structure_violations: structure,
        lemmas,
        frechet,
        t_check,
        passed,
    };
    write_json(args.report.as_deref(), &report)?;
    Ok(Outcome::from_passed(passed))
}
