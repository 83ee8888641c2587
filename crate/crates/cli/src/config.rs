//! Experiment parameters shared by the subcommands.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use spanner_core::pointset::Distribution;
use spanner_core::spanner::separation_for_stretch;
use spanner_core::verify::{t_for_epsilon, Regime, DEFAULT_TOLERANCE};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistributionArg {
    UniformSquare,
    Clustered,
    Grid,
}

impl From<DistributionArg> for Distribution {
    fn from(d: DistributionArg) -> Self {
        match d {
            DistributionArg::UniformSquare => Distribution::UniformSquare,
            DistributionArg::Clustered => Distribution::Clustered,
            DistributionArg::Grid => Distribution::Grid,
        }
    }
}

/// The single parameter that selects a spanner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Knob {
    /// Stretch factor.
    T(f64),
    /// Target Frechet dilation.
    Eps(f64),
    /// WSPD separation.
    S(f64),
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct KnobArgs {
    /// Stretch factor t >= 1
    #[arg(long)]
    pub t: Option<f64>,
    /// Target Frechet dilation; converted to t
    #[arg(long)]
    pub eps: Option<f64>,
    /// WSPD separation factor (wspd only)
    #[arg(long)]
    pub s: Option<f64>,
}

impl KnobArgs {
    pub fn knob(&self) -> Option<Knob> {
        match (self.t, self.eps, self.s) {
            (Some(t), None, None) => Some(Knob::T(t)),
            (None, Some(e), None) => Some(Knob::Eps(e)),
            (None, None, Some(s)) => Some(Knob::S(s)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub n: usize,
    pub distribution: Distribution,
    pub knob: Option<Knob>,
    pub tolerance: f64,
    pub out: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            n: 100,
            distribution: Distribution::UniformSquare,
            knob: None,
            tolerance: DEFAULT_TOLERANCE,
            out: None,
        }
    }
}

/// Resolved spanner parameters: `t` always, `s` for WSPD spanners.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolved {
    pub t: Option<f64>,
    pub eps: Option<f64>,
    pub s: Option<f64>,
}

/// Greedy spanners take `t` directly or `eps` through the general inverse.
pub fn resolve_greedy(knob: Knob) -> Result<Resolved, CliError> {
    match knob {
        Knob::T(t) if t >= 1.0 && t.is_finite() => Ok(Resolved {
            t: Some(t),
            eps: None,
            s: None,
        }),
        Knob::T(t) => Err(CliError::usage(format!("--t must satisfy t >= 1, got {t}"))),
        Knob::Eps(e) => {
            let t = t_for_epsilon(e, Regime::General)
                .map_err(|_| CliError::usage(format!("--eps must satisfy eps > 0, got {e}")))?;
            Ok(Resolved {
                t: Some(t),
                eps: Some(e),
                s: None,
            })
        }
        Knob::S(_) => Err(CliError::usage("--s applies to the wspd method only")),
    }
}

/// WSPD spanners take `s` directly, `t` through `s = (4t+4)/(t-1)`, or `eps`
/// through the WSPD inverse and then `t`.
pub fn resolve_wspd(knob: Knob) -> Result<Resolved, CliError> {
    let from_t = |t: f64, eps: Option<f64>| -> Result<Resolved, CliError> {
        let s = separation_for_stretch(t)
            .map_err(|_| CliError::usage(format!("--t must satisfy t > 1 for a WSPD spanner, got {t}")))?;
        Ok(Resolved { t: Some(t), eps, s: Some(s) })
    };
    match knob {
        Knob::S(s) if s > 0.0 && s.is_finite() => Ok(Resolved {
            // the guarantee t = (s+4)/(s-4) only exists for s > 4
            t: (s > 4.0).then(|| (s + 4.0) / (s - 4.0)),
            eps: None,
            s: Some(s),
        }),
        Knob::S(s) => Err(CliError::usage(format!("--s must satisfy s > 0, got {s}"))),
        Knob::T(t) => from_t(t, None),
        Knob::Eps(e) => {
            let t = t_for_epsilon(e, Regime::Wspd)
                .map_err(|_| CliError::usage(format!("--eps must satisfy 0 < eps < 1/2 for a WSPD spanner, got {e}")))?;
            from_t(t, Some(e))
        }
    }
}
