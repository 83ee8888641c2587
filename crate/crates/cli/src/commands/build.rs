use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde_json::{json, Map, Value};
use spanner_core::pointset::read_points;
use spanner_core::spanner::{path_greedy_spanner, wspd_spanner, RepresentativePolicy};

use super::{read_file, write_json, Outcome};
use crate::config::{resolve_greedy, resolve_wspd, KnobArgs};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Greedy,
    Wspd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RepArg {
    LowestIndex,
    HighestIndex,
    NearestCenter,
}

impl RepArg {
    pub fn policy(self) -> RepresentativePolicy {
        match self {
            Self::LowestIndex => RepresentativePolicy::LowestIndex,
            Self::HighestIndex => RepresentativePolicy::HighestIndex,
            Self::NearestCenter => RepresentativePolicy::NearestCenter,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::LowestIndex => "lowest-index",
            Self::HighestIndex => "highest-index",
            Self::NearestCenter => "nearest-center",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        <Self as ValueEnum>::from_str(name, false).ok()
    }
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Point CSV with header `x,y`
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long, value_enum, default_value = "greedy")]
    pub method: Method,
    #[command(flatten)]
    pub knob: KnobArgs,
    /// WSPD representative rule
    #[arg(long, value_enum, default_value = "lowest-index")]
    pub rep: RepArg,
    /// Graph JSON; stdout if absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the WSPD (wspd method only)
    #[arg(long)]
    pub wspd_out: Option<PathBuf>,
}

pub fn run(args: &BuildArgs) -> Result<Outcome, CliError> {
    let points = read_points(read_file(&args.points)?.as_slice())?;
    let knob = args.knob.knob().ok_or_else(|| CliError::usage("give exactly one of --t, --eps, --s"))?;
    let mut meta = Map::new();
    let put = |meta: &mut Map<String, Value>, key: &str, v: Option<f64>| {
        if let Some(v) = v {
            meta.insert(key.into(), json!(v));
        }
    };
    let graph = match args.method {
        Method::Greedy => {
            if args.wspd_out.is_some() {
                return Err(CliError::usage("--wspd-out applies to the wspd method only"));
            }
            let r = resolve_greedy(knob)?;
            meta.insert("method".into(), json!("greedy"));
            put(&mut meta, "eps", r.eps);
            put(&mut meta, "t", r.t);
            path_greedy_spanner(&points, r.t.expect("greedy has t"))?
        }
        Method::Wspd => {
            let r = resolve_wspd(knob)?;
            let s = r.s.expect("wspd has s");
            let (graph, wspd) = wspd_spanner(&points, s, args.rep.policy())?;
            meta.insert("method".into(), json!("wspd"));
            put(&mut meta, "eps", r.eps);
            put(&mut meta, "t", r.t);
            put(&mut meta, "s", Some(s));
            meta.insert("representative".into(), json!(args.rep.name()));
            meta.insert("pairs".into(), json!(wspd.pairs.len()));
            if let Some(path) = &args.wspd_out {
                write_json(Some(path), &wspd.to_document())?;
            }
            graph
        }
    };
    let mut doc = graph.to_document();
    doc.metadata = Some(meta);
    write_json(args.out.as_deref(), &doc)?;
    Ok(Outcome::Pass)
}
