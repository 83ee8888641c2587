//! Spanner verdicts: stretch, Hausdorff and Frechet dilation, and the bound
//! formulas they are compared against.
//!
//! Dilation sweeps measure each pair on a witness path, by default the
//! shortest path. A passing witness proves the existential spanner property.
//! For the one-sided Hausdorff variant, [`hausdorff_path_exists`] decides the
//! existential exactly.

use std::collections::{BTreeMap, VecDeque};

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{dist, point_segment_distance, Point, Segment};
use crate::graph::{GeoGraph, GraphError, PairMax, PathResult, ShortestPathTree};
use crate::hull::ConvexHull;
use crate::metrics::{frechet_polyline_segment, MetricError};
use crate::spanner::{wspd_path, SpannerError, Wspd};

/// Absolute tolerance on ratios, i.e. after scaling `d(u,v)` to 1.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Largest vertex count swept exhaustively unless overridden.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 2000;

/// Pairs drawn when a graph exceeds the exhaustive cap and no sample size is given.
pub const DEFAULT_SAMPLE_SIZE: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("stretch factor must be at least 1, got {0}")]
    StretchBelowOne(f64),
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(f64),
    #[error("epsilon {0} is outside the WSPD range 0 < eps < 1/2")]
    WspdEpsilonOutOfRange(f64),
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Spanner(#[from] SpannerError),
}

/// Dilation bounds guaranteed for every `t`-path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundSet {
    pub t: f64,
    /// `sqrt(t^2 - 1) / 2`
    pub hausdorff_bound: f64,
    /// `min(t/2, sqrt(t^2 - t) / sqrt(2))`
    pub frechet_bound: f64,
    /// `(t - 1) / (2t + 2)`, for the recursive paths of a WSPD spanner
    pub wspd_frechet_bound: f64,
}

pub fn bounds_for_t(t: f64) -> Result<BoundSet, VerifyError> {
    if !(t >= 1.0) || !t.is_finite() {
        return Err(VerifyError::StretchBelowOne(t));
    }
    Ok(BoundSet {
        t,
        hausdorff_bound: (t * t - 1.0).sqrt() / 2.0,
        frechet_bound: (t / 2.0).min((t * t - t).sqrt() / 2f64.sqrt()),
        wspd_frechet_bound: (t - 1.0) / (2.0 * t + 2.0),
    })
}

/// Which Frechet bound to invert.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// Any `t`-spanner: `frechet_bound`.
    General,
    /// WSPD spanner: `wspd_frechet_bound`.
    Wspd,
}

/// The stretch `t` whose Frechet bound equals `eps`.
///
/// In the general regime the bound is `sqrt(t^2 - t) / sqrt(2)` up to `t = 2`
/// (value 1) and `t / 2` beyond, so the inverse is
/// `(1 + sqrt(1 + 8 eps^2)) / 2` for `eps <= 1` and `2 eps` above.
pub fn t_for_epsilon(eps: f64, regime: Regime) -> Result<f64, VerifyError> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(VerifyError::NonPositiveEpsilon(eps));
    }
    match regime {
        Regime::General if eps <= 1.0 => Ok((1.0 + (1.0 + 8.0 * eps * eps).sqrt()) / 2.0),
        Regime::General => Ok(2.0 * eps),
        Regime::Wspd if eps < 0.5 => Ok((1.0 + 2.0 * eps) / (1.0 - 2.0 * eps)),
        Regime::Wspd => Err(VerifyError::WspdEpsilonOutOfRange(eps)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DilationKind {
    Stretch,
    Hausdorff,
    Frechet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    Exhaustive,
    Sampled,
}

/// The ratio measured for one pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairRatio {
    pub pair: (usize, usize),
    pub ratio: f64,
}

/// Maximum of a per-pair ratio over a graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DilationReport {
    pub kind: DilationKind,
    pub max_ratio: f64,
    pub witness_pair: Option<(usize, usize)>,
    pub witness_path: Option<Vec<usize>>,
    /// Only for Hausdorff reports: whether both directions were measured.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<bool>,
    pub mode: SweepMode,
    pub pairs_checked: usize,
    /// Pairs with no connecting path; any such pair fails the check.
    pub unreachable: Vec<(usize, usize)>,
    pub tolerance: f64,
    pub bound: Option<f64>,
    pub passed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_pair: Option<Vec<PairRatio>>,
}

impl DilationReport {
    /// Compares against `bound` with the report's tolerance.
    pub fn with_bound(mut self, bound: f64) -> Self {
        self.bound = Some(bound);
        self.passed = Some(self.unreachable.is_empty() && self.max_ratio <= bound + self.tolerance);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }
}

/// Which path of the graph is measured for a pair.
#[derive(Debug, Clone, Copy)]
pub enum PathPolicy<'a> {
    ShortestPath,
    /// The recursive path of a WSPD spanner; the graph must be built from it.
    Wspd(&'a Wspd),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    /// Absolute tolerance on ratios.
    pub tolerance: f64,
    /// Measure both Hausdorff directions.
    pub symmetric: bool,
    /// Graphs with more vertices are sampled.
    pub exhaustive_cap: usize,
    /// Forces sampling with this many pairs.
    pub sample: Option<usize>,
    pub seed: u64,
    pub keep_per_pair: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
            symmetric: false,
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            sample: None,
            seed: 0,
            keep_per_pair: false,
        }
    }
}

/// Unordered pairs `(u, v)`, `u < v`, grouped by `u`.
fn pair_plan(n: usize, opts: &SweepOptions) -> (SweepMode, BTreeMap<usize, Vec<usize>>) {
    let total = n * n.saturating_sub(1) / 2;
    let sample = match opts.sample {
        Some(k) => Some(k),
        None if n > opts.exhaustive_cap => Some(DEFAULT_SAMPLE_SIZE),
        None => None,
    };
    let mut plan: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    match sample {
        Some(k) if k < total => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut picks = index::sample(&mut rng, total, k).into_vec();
            picks.sort_unstable();
            // walk rows: row u holds pairs (u, u+1..n)
            let (mut u, mut row_start) = (0usize, 0usize);
            for p in picks {
                while p >= row_start + (n - 1 - u) {
                    row_start += n - 1 - u;
                    u += 1;
                }
                plan.entry(u).or_default().push(u + 1 + (p - row_start));
            }
            (SweepMode::Sampled, plan)
        }
        _ => {
            for u in 0..n.saturating_sub(1) {
                plan.insert(u, (u + 1..n).collect());
            }
            (SweepMode::Exhaustive, plan)
        }
    }
}

/// Per-source results: measured ratios and unreachable targets.
type SourceResult = (Vec<PairRatio>, Vec<(usize, usize)>);

fn run_sweep<F>(
    graph: &GeoGraph,
    kind: DilationKind,
    opts: &SweepOptions,
    per_source: F,
) -> Result<(DilationReport, Option<(usize, usize)>), VerifyError>
where
    F: Fn(usize, &[usize]) -> Result<SourceResult, VerifyError> + Sync,
{
    if !(opts.tolerance > 0.0) {
        return Err(VerifyError::NonPositiveTolerance(opts.tolerance));
    }
    let (mode, plan) = pair_plan(graph.len(), opts);
    let plan: Vec<(usize, Vec<usize>)> = plan.into_iter().collect();
    let results: Vec<SourceResult> = plan
        .par_iter()
        .map(|(u, targets)| per_source(*u, targets))
        .collect::<Result<_, _>>()?;
    let mut best: Option<PairMax> = None;
    let mut per_pair = Vec::new();
    let mut unreachable = Vec::new();
    let mut pairs_checked = 0;
    for (ratios, missing) in results {
        pairs_checked += ratios.len() + missing.len();
        for r in &ratios {
            let cand = PairMax {
                value: r.ratio,
                pair: r.pair,
            };
            best = Some(best.map_or(cand, |b| b.merge(cand)));
        }
        if opts.keep_per_pair {
            per_pair.extend(ratios);
        }
        unreachable.extend(missing);
    }
    let witness = best.map(|b| b.pair);
    Ok((
        DilationReport {
            kind,
            max_ratio: best.map_or(0.0, |b| b.value),
            witness_pair: witness,
            witness_path: None,
            symmetric: None,
            mode,
            pairs_checked,
            unreachable,
            tolerance: opts.tolerance,
            bound: None,
            passed: None,
            per_pair: opts.keep_per_pair.then_some(per_pair),
        },
        witness,
    ))
}

fn policy_path(graph: &GeoGraph, policy: PathPolicy, u: usize, v: usize) -> Result<Option<PathResult>, VerifyError> {
    match policy {
        PathPolicy::ShortestPath => Ok(graph.shortest_path_tree(u)?.path_to(graph, v)),
        PathPolicy::Wspd(w) => Ok(Some(wspd_path(w, graph, u, v)?.path)),
    }
}

fn attach_witness(
    mut report: DilationReport,
    witness: Option<(usize, usize)>,
    graph: &GeoGraph,
    policy: PathPolicy,
) -> Result<DilationReport, VerifyError> {
    if let Some((u, v)) = witness {
        report.witness_path = policy_path(graph, policy, u, v)?.map(|p| p.vertex_indices);
    }
    Ok(report)
}

/// Maximum stretch over the planned pairs; passes iff it is at most `t` within tolerance.
pub fn verify_t_spanner(graph: &GeoGraph, t: f64, opts: &SweepOptions) -> Result<DilationReport, VerifyError> {
    if !(t >= 1.0) {
        return Err(VerifyError::StretchBelowOne(t));
    }
    let (report, witness) = run_sweep(graph, DilationKind::Stretch, opts, |u, targets| {
        let tree = graph.shortest_path_tree(u)?;
        let mut ratios = Vec::with_capacity(targets.len());
        let mut missing = Vec::new();
        for &v in targets {
            if tree.reaches(v) {
                ratios.push(PairRatio {
                    pair: (u, v),
                    ratio: tree.dist[v] / dist(graph.vertex(u), graph.vertex(v)),
                });
            } else {
                missing.push((u, v));
            }
        }
        Ok((ratios, missing))
    })?;
    Ok(attach_witness(report, witness, graph, PathPolicy::ShortestPath)?.with_bound(t))
}

/// Hulls of the tree paths from the source, built in settle order.
fn tree_hulls(graph: &GeoGraph, tree: &ShortestPathTree) -> Vec<Option<ConvexHull>> {
    let mut hulls: Vec<Option<ConvexHull>> = vec![None; graph.len()];
    for &v in &tree.order {
        let hull = match tree.pred[v] {
            Some(p) => hulls[p].as_ref().expect("predecessor settled first").with(graph.vertex(v)),
            None => ConvexHull::from_points(&[graph.vertex(v)]),
        };
        hulls[v] = Some(hull);
    }
    hulls
}

/// Hausdorff ratio of a path between `a` and `b` from the convex hull of its vertices.
///
/// The distance to `ab` is convex, so its maximum over the path is a hull
/// vertex. With `symmetric`, the segment-to-path direction is bounded by the
/// largest offset of a vertex from the line `ab`, which never exceeds the
/// path-to-segment value; the symmetric distance is therefore the same number
/// and the offset is only computed as a check.
fn hull_ratio(hull: &ConvexHull, a: Point, b: Point, symmetric: bool) -> f64 {
    let s = Segment::new(a, b);
    let d = s.length();
    let (forward, _) = hull.max_by(|p| point_segment_distance(p, &s)).expect("non-empty hull");
    if !symmetric {
        return forward / d;
    }
    let dir = (b - a) * (1.0 / d);
    let (offset, _) = hull.max_by(|p| dir.cross(p - a).abs()).expect("non-empty hull");
    forward.max(offset) / d
}

/// Maximum over pairs of `d_H(P(u,v), uv) / d(u,v)` on the policy's paths.
pub fn hausdorff_dilation(
    graph: &GeoGraph,
    policy: PathPolicy,
    opts: &SweepOptions,
) -> Result<DilationReport, VerifyError> {
    let (mut report, witness) = run_sweep(graph, DilationKind::Hausdorff, opts, |u, targets| {
        let mut ratios = Vec::with_capacity(targets.len());
        let mut missing = Vec::new();
        match policy {
            PathPolicy::ShortestPath => {
                let tree = graph.shortest_path_tree(u)?;
                let hulls = tree_hulls(graph, &tree);
                for &v in targets {
                    match &hulls[v] {
                        Some(h) => ratios.push(PairRatio {
                            pair: (u, v),
                            ratio: hull_ratio(h, graph.vertex(u), graph.vertex(v), opts.symmetric),
                        }),
                        None => missing.push((u, v)),
                    }
                }
            }
            PathPolicy::Wspd(w) => {
                for &v in targets {
                    let path = wspd_path(w, graph, u, v)?.path;
                    let hull = ConvexHull::from_points(path.polyline.vertices());
                    ratios.push(PairRatio {
                        pair: (u, v),
                        ratio: hull_ratio(&hull, graph.vertex(u), graph.vertex(v), opts.symmetric),
                    });
                }
            }
        }
        Ok((ratios, missing))
    })?;
    report.symmetric = Some(opts.symmetric);
    attach_witness(report, witness, graph, policy)
}

/// Maximum over pairs of `d_F(P(u,v), uv) / d(u,v)` on the policy's paths.
pub fn frechet_dilation(
    graph: &GeoGraph,
    policy: PathPolicy,
    opts: &SweepOptions,
) -> Result<DilationReport, VerifyError> {
    let ratio = |u: usize, v: usize, path: &PathResult| -> Result<PairRatio, VerifyError> {
        let s = Segment::new(graph.vertex(u), graph.vertex(v));
        let d = s.length();
        // metric tolerance a tenth of the ratio tolerance, in absolute units
        let f = frechet_polyline_segment(&path.polyline, &s, 0.1 * opts.tolerance * d)?;
        Ok(PairRatio {
            pair: (u, v),
            ratio: f.distance / d,
        })
    };
    let (report, witness) = run_sweep(graph, DilationKind::Frechet, opts, |u, targets| {
        let mut ratios = Vec::with_capacity(targets.len());
        let mut missing = Vec::new();
        match policy {
            PathPolicy::ShortestPath => {
                let tree = graph.shortest_path_tree(u)?;
                for &v in targets {
                    match tree.path_to(graph, v) {
                        Some(p) => ratios.push(ratio(u, v, &p)?),
                        None => missing.push((u, v)),
                    }
                }
            }
            PathPolicy::Wspd(w) => {
                for &v in targets {
                    ratios.push(ratio(u, v, &wspd_path(w, graph, u, v)?.path)?);
                }
            }
        }
        Ok((ratios, missing))
    })?;
    attach_witness(report, witness, graph, policy)
}

/// Relative slack on the tube radius.
const TUBE_REL_TOL: f64 = 1e-9;

/// A path from `u` to `v` with `d_H(path, uv) <= eps * d(u,v)`, if one exists.
///
/// A path qualifies iff every edge lies in the tube of radius `eps * d(u,v)`
/// around `uv`. The distance to `uv` is convex along an edge, so an edge is in
/// the tube iff both endpoints are, and existence reduces to reachability in
/// the subgraph of tube edges. The returned path has the fewest edges.
pub fn hausdorff_path_exists(graph: &GeoGraph, u: usize, v: usize, eps: f64) -> Result<Option<PathResult>, VerifyError> {
    for x in [u, v] {
        if x >= graph.len() {
            return Err(GraphError::VertexOutOfRange {
                index: x,
                len: graph.len(),
            }
            .into());
        }
    }
    if u == v {
        return Err(GraphError::SameVertex(u).into());
    }
    if !(eps >= 0.0) {
        return Err(VerifyError::NonPositiveEpsilon(eps));
    }
    let s = Segment::new(graph.vertex(u), graph.vertex(v));
    let radius = eps * s.length() * (1.0 + TUBE_REL_TOL);
    let inside: Vec<bool> = graph
        .vertices()
        .iter()
        .map(|&p| point_segment_distance(p, &s) <= radius)
        .collect();
    let mut pred: Vec<Option<usize>> = vec![None; graph.len()];
    let mut seen = vec![false; graph.len()];
    seen[u] = true;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        if x == v {
            let mut indices = vec![v];
            let mut cur = v;
            while let Some(p) = pred[cur] {
                indices.push(p);
                cur = p;
            }
            indices.reverse();
            return Ok(Some(PathResult::from_indices(graph, indices)));
        }
        let mut next: Vec<usize> = graph.neighbors(x).iter().map(|&(w, _)| w).collect();
        next.sort_unstable();
        for w in next {
            if inside[w] && !seen[w] {
                seen[w] = true;
                pred[w] = Some(x);
                queue.push_back(w);
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, max_stretch, stretch};
    use crate::koch::koch_graph;
    use crate::metrics::hausdorff;
    use crate::spanner::path_greedy_spanner;
    use proptest::prelude::*;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn scattered(n: usize, a: f64, b: f64) -> Vec<Point> {
        (0..n)
            .map(|i| {
                let f = i as f64;
                pt((f * a).fract(), (f * b).fract())
            })
            .collect()
    }

    #[test]
    fn bound_formulas() {
        let b = bounds_for_t(1.0).unwrap();
        assert_eq!((b.hausdorff_bound, b.frechet_bound, b.wspd_frechet_bound), (0.0, 0.0, 0.0));
        let b = bounds_for_t(2.0).unwrap();
        assert!((b.hausdorff_bound - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((b.frechet_bound - 1.0).abs() < 1e-15);
        assert!((2f64 / 2.0 - 2f64.sqrt() / 2f64.sqrt()).abs() < 1e-12);
        assert!((b.wspd_frechet_bound - 1.0 / 6.0).abs() < 1e-15);
        let b = bounds_for_t(1.5).unwrap();
        assert!((b.frechet_bound - 0.75f64.sqrt() / 2f64.sqrt()).abs() < 1e-15);
        assert!(b.frechet_bound < 0.75);
        assert!(bounds_for_t(0.99).is_err());
    }

    #[test]
    fn epsilon_inverse() {
        let g = t_for_epsilon(0.01, Regime::General).unwrap();
        assert!((g - 1.0002).abs() < 1e-4);
        let w = t_for_epsilon(0.01, Regime::Wspd).unwrap();
        assert!((w - 1.0408).abs() < 1e-3);
        assert!(matches!(t_for_epsilon(0.5, Regime::Wspd), Err(VerifyError::WspdEpsilonOutOfRange(_))));
        assert!(t_for_epsilon(0.0, Regime::General).is_err());
        assert_eq!(t_for_epsilon(3.0, Regime::General).unwrap(), 6.0);
    }

    proptest! {
        #[test]
        fn epsilon_round_trip(eps in 1e-4..0.4999f64, big in 1e-4..50.0f64) {
            let t = t_for_epsilon(eps, Regime::Wspd).unwrap();
            prop_assert!((bounds_for_t(t).unwrap().wspd_frechet_bound - eps).abs() < 1e-12);
            let t = t_for_epsilon(big, Regime::General).unwrap();
            prop_assert!((bounds_for_t(t).unwrap().frechet_bound - big).abs() < 1e-12 * big.max(1.0));
        }

        #[test]
        fn frechet_bound_never_exceeds_half_t(t in 1.0..20.0f64) {
            let b = bounds_for_t(t).unwrap();
            prop_assert!(b.frechet_bound <= t / 2.0);
            prop_assert!(b.hausdorff_bound <= b.frechet_bound + 1e-15);
        }

        #[test]
        fn tube_reachability_is_monotone(eps in 0.0..1.0f64, extra in 0.0..0.5f64, seed in 0u64..50) {
            let pts = scattered(25, 0.754_877_666 + seed as f64 * 1e-3, 0.569_840_291);
            let g = path_greedy_spanner(&pts, 1.8).unwrap();
            let (u, v) = (0, 1 + (seed as usize % 24));
            let small = hausdorff_path_exists(&g, u, v, eps).unwrap().is_some();
            let large = hausdorff_path_exists(&g, u, v, eps + extra).unwrap().is_some();
            prop_assert!(!small || large);
        }
    }

    #[test]
    fn complete_graph_checks() {
        let g = complete_graph(&scattered(12, 0.618_033_988_7, 0.414_213_562_3)).unwrap();
        let opts = SweepOptions::default();
        assert_eq!(verify_t_spanner(&g, 1.0, &opts).unwrap().passed, Some(true));
        assert_eq!(hausdorff_dilation(&g, PathPolicy::ShortestPath, &opts).unwrap().max_ratio, 0.0);
        // the Frechet search stops within its tolerance of the exact 0
        assert!(frechet_dilation(&g, PathPolicy::ShortestPath, &opts).unwrap().max_ratio <= opts.tolerance);
    }

    #[test]
    fn koch_refutes_two() {
        let g = koch_graph(3).unwrap().into_graph();
        let r = verify_t_spanner(&g, 2.0, &SweepOptions::default()).unwrap();
        assert_eq!(r.passed, Some(false));
        assert!((stretch(&g, 0, 64).unwrap() - 64.0 / 27.0).abs() < 1e-12);
        // the worst pair is not the extreme one: 24 edges of length 1/27 between
        // two vertices 2/9 apart
        assert_eq!(r.witness_pair, Some((20, 44)));
        assert!((r.max_ratio - 4.0).abs() < 1e-12);
        assert_eq!(r.witness_path.unwrap(), (20..=44).collect::<Vec<_>>());
    }

    #[test]
    fn self_consistency_with_max_stretch() {
        let pts = scattered(40, 0.618_033_988_7, 0.414_213_562_3);
        let g = path_greedy_spanner(&pts, 1.3).unwrap();
        let m = max_stretch(&g).unwrap();
        let r = verify_t_spanner(&g, m.value, &SweepOptions::default()).unwrap();
        assert_eq!(r.passed, Some(true));
        assert_eq!(r.witness_pair, Some(m.pair));
    }

    #[test]
    fn greedy_dilation_within_bounds() {
        let pts = scattered(60, 0.754_877_666, 0.569_840_291);
        let g = path_greedy_spanner(&pts, 1.5).unwrap();
        let b = bounds_for_t(1.5).unwrap();
        let opts = SweepOptions::default();
        let h = hausdorff_dilation(&g, PathPolicy::ShortestPath, &opts).unwrap().with_bound(b.hausdorff_bound);
        let f = frechet_dilation(&g, PathPolicy::ShortestPath, &opts).unwrap().with_bound(b.frechet_bound);
        assert_eq!(h.passed, Some(true));
        assert_eq!(f.passed, Some(true));
        assert!(h.max_ratio <= f.max_ratio + 2.0 * opts.tolerance);
    }

    #[test]
    fn sweep_matches_exact_hausdorff() {
        let k = koch_graph(2).unwrap();
        let g = k.graph();
        let opts = SweepOptions {
            symmetric: true,
            keep_per_pair: true,
            ..Default::default()
        };
        let r = hausdorff_dilation(g, PathPolicy::ShortestPath, &opts).unwrap();
        for pr in r.per_pair.as_ref().unwrap() {
            let (u, v) = pr.pair;
            let s = Segment::new(g.vertex(u), g.vertex(v));
            let exact = hausdorff(&k.path(u, v).unwrap().polyline, &s, 1e-13).unwrap();
            assert!((exact.symmetric / s.length() - pr.ratio).abs() < 1e-11, "{:?}", pr.pair);
        }
        assert!(r.max_ratio <= 6.0);
    }

    #[test]
    fn sampling_is_seeded_and_labelled() {
        let g = koch_graph(3).unwrap().into_graph();
        let opts = SweepOptions {
            sample: Some(100),
            seed: 7,
            keep_per_pair: true,
            ..Default::default()
        };
        let a = hausdorff_dilation(&g, PathPolicy::ShortestPath, &opts).unwrap();
        let b = hausdorff_dilation(&g, PathPolicy::ShortestPath, &opts).unwrap();
        assert_eq!(a.mode, SweepMode::Sampled);
        assert_eq!(a.pairs_checked, 100);
        assert_eq!(a, b);
        let pairs: Vec<_> = a.per_pair.unwrap().iter().map(|p| p.pair).collect();
        assert!(pairs.windows(2).all(|w| w[0] < w[1]));
        assert!(pairs.iter().all(|&(u, v)| u < v && v < 65));
        let capped = SweepOptions {
            exhaustive_cap: 10,
            ..Default::default()
        };
        // the default sample exceeds the 2080 pairs, so every pair is checked
        let c = verify_t_spanner(&g, 3.0, &capped).unwrap();
        assert_eq!(c.mode, SweepMode::Exhaustive);
        assert_eq!(c.pairs_checked, 65 * 64 / 2);
    }

    #[test]
    fn unreachable_pairs_fail() {
        let g = GeoGraph::with_edges(vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(5.0, 5.0)], [(0, 1)]).unwrap();
        let r = verify_t_spanner(&g, 10.0, &SweepOptions::default()).unwrap();
        assert_eq!(r.unreachable, vec![(0, 2), (1, 2)]);
        assert_eq!(r.passed, Some(false));
        assert_eq!(hausdorff_path_exists(&g, 0, 2, 10.0).unwrap(), None);
    }

    #[test]
    fn tube_examples() {
        let g = koch_graph(1).unwrap().into_graph();
        let apex = 3f64.sqrt() / 6.0;
        let path = hausdorff_path_exists(&g, 0, 4, apex).unwrap().unwrap();
        assert_eq!(path.vertex_indices, vec![0, 1, 2, 3, 4]);
        assert!(hausdorff_path_exists(&g, 0, 4, apex * (1.0 - 1e-6)).unwrap().is_none());
        let direct = GeoGraph::with_edges(vec![pt(0.0, 0.0), pt(1.0, 0.0)], [(0, 1)]).unwrap();
        assert!(hausdorff_path_exists(&direct, 0, 1, 0.0).unwrap().is_some());
    }

    #[test]
    fn report_json_shape() {
        let g = GeoGraph::with_edges(vec![pt(0.0, 0.0), pt(1.0, 0.0)], [(0, 1)]).unwrap();
        let r = verify_t_spanner(&g, 1.0, &SweepOptions::default()).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"stretch","max_ratio":1.0,"witness_pair":[0,1],"witness_path":[0,1],"mode":"exhaustive","pairs_checked":1,"unreachable":[],"tolerance":1e-9,"bound":1.0,"passed":true}"#
        );
    }
}
