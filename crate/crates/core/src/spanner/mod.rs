//! Spanner constructions: path-greedy, and the WSPD spanner built on a split tree.

mod greedy;
pub mod split_tree;
pub mod wspd;

use thiserror::Error;

use crate::geometry::{dist, Point, Segment};
use crate::graph::{GeoGraph, GraphError, PathResult};
use crate::metrics::{frechet_polyline_segment, MetricError};

pub use greedy::path_greedy_spanner;
pub use split_tree::{BoundingBox, SplitNode, SplitTree};
pub use wspd::{
    compute_wspd, compute_wspd_with, well_separated, PairDocument, RepresentativePolicy, WsPair, Wspd,
    WspdDocument,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpannerError {
    #[error("stretch factor must be at least 1, got {0}")]
    StretchBelowOne(f64),
    #[error("separation must be positive, got {0}")]
    NonPositiveSeparation(f64),
    #[error("no pair of the decomposition separates {0} and {1}")]
    NoSeparatingPair(usize, usize),
    #[error("edge ({0}, {1}) of a decomposition pair is missing from the graph")]
    MissingPairEdge(usize, usize),
    #[error(
        "Frechet distance {measured} of the path {path:?} for pair {pair} exceeds \
         min(2r, 2d/s) = {bound} (r = {radius}, d = {distance})"
    )]
    CertificateViolation {
        pair: usize,
        path: Vec<usize>,
        measured: f64,
        radius: f64,
        distance: f64,
        bound: f64,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// Separation that makes the WSPD spanner a `t`-spanner.
pub fn separation_for_stretch(t: f64) -> Result<f64, SpannerError> {
    if !(t > 1.0) || !t.is_finite() {
        return Err(SpannerError::StretchBelowOne(t));
    }
    Ok((4.0 * t + 4.0) / (t - 1.0))
}

fn coords(points: &[Point]) -> Vec<[f64; 2]> {
    points.iter().map(|&p| p.into()).collect()
}

/// Split tree over `points`. Fails on duplicate points.
pub fn build_split_tree(points: &[Point]) -> Result<SplitTree, SpannerError> {
    // GeoGraph::new rejects duplicates with a useful message
    GeoGraph::new(points.to_vec())?;
    if points.is_empty() {
        return Err(GraphError::TooFewVertices { needed: 1, got: 0 }.into());
    }
    Ok(SplitTree::build(coords(points)))
}

/// WSPD of `points` with separation `s`.
pub fn wspd_of(points: &[Point], s: f64, policy: RepresentativePolicy) -> Result<Wspd, SpannerError> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(SpannerError::NonPositiveSeparation(s));
    }
    Ok(compute_wspd_with(build_split_tree(points)?, s, policy))
}

/// The graph with one edge per pair of `wspd`, joining the representatives.
pub fn spanner_from_wspd(points: &[Point], wspd: &Wspd) -> Result<GeoGraph, SpannerError> {
    let mut graph = GeoGraph::new(points.to_vec())?;
    for pair in &wspd.pairs {
        graph.add_edge(pair.rep_a, pair.rep_b)?;
    }
    Ok(graph)
}

/// WSPD spanner of `points`; returns the graph and the decomposition it came from.
pub fn wspd_spanner(
    points: &[Point],
    s: f64,
    policy: RepresentativePolicy,
) -> Result<(GeoGraph, Wspd), SpannerError> {
    let wspd = wspd_of(points, s, policy)?;
    let graph = spanner_from_wspd(points, &wspd)?;
    Ok((graph, wspd))
}

/// A path produced by [`wspd_path`].
#[derive(Debug, Clone, PartialEq)]
pub struct WspdPath {
    pub path: PathResult,
    /// Index of the pair separating the endpoints.
    pub pair: usize,
    /// Number of leading vertices on the start point's side of the pair.
    pub split: usize,
}

/// The recursive path between `p` and `q`: a path from `p` to its side's
/// representative, the pair edge, then a path from the other representative
/// to `q`. The prefix stays in `p`'s subset and the suffix in `q`'s.
pub fn wspd_path(wspd: &Wspd, graph: &GeoGraph, p: usize, q: usize) -> Result<WspdPath, SpannerError> {
    for v in [p, q] {
        if v >= graph.len() || v >= wspd.tree.point_count() {
            return Err(GraphError::VertexOutOfRange {
                index: v,
                len: graph.len(),
            }
            .into());
        }
    }
    if p == q {
        return Err(GraphError::SameVertex(p).into());
    }
    let mut indices = Vec::new();
    let (pair, split) = append_path(wspd, graph, p, q, &mut indices)?;
    Ok(WspdPath {
        path: PathResult::from_indices(graph, indices),
        pair: pair.expect("distinct endpoints"),
        split,
    })
}

/// Appends the path from `p` to `q` (inclusive) to `out`. Returns the
/// separating pair and the number of vertices appended before the pair edge.
fn append_path(
    wspd: &Wspd,
    graph: &GeoGraph,
    p: usize,
    q: usize,
    out: &mut Vec<usize>,
) -> Result<(Option<usize>, usize), SpannerError> {
    if p == q {
        out.push(p);
        return Ok((None, 1));
    }
    let (i, swapped) = wspd.pair_for(p, q).ok_or(SpannerError::NoSeparatingPair(p, q))?;
    let pair = &wspd.pairs[i];
    let (rp, rq) = if swapped {
        (pair.rep_b, pair.rep_a)
    } else {
        (pair.rep_a, pair.rep_b)
    };
    if !graph.has_edge(rp, rq) {
        return Err(SpannerError::MissingPairEdge(rp, rq));
    }
    let start = out.len();
    append_path(wspd, graph, p, rp, out)?;
    let split = out.len() - start;
    append_path(wspd, graph, rq, q, out)?;
    Ok((Some(i), split))
}

/// Outcome of a passing [`wspd_frechet_certificate`].
#[derive(Debug, Clone, PartialEq)]
pub struct FrechetCertificate {
    pub pair: usize,
    pub path: Vec<usize>,
    pub frechet: f64,
    pub radius: f64,
    pub distance: f64,
}

impl FrechetCertificate {
    pub fn ratio(&self) -> f64 {
        self.frechet / self.distance
    }
}

/// Checks that the recursive path between `u` and `v` is within Frechet
/// distance `2r` of the segment `uv`, where `r` is the radius of the pair
/// separating them, and hence within `(2/s) * d(u, v)`.
pub fn wspd_frechet_certificate(
    wspd: &Wspd,
    graph: &GeoGraph,
    u: usize,
    v: usize,
    tol: f64,
) -> Result<FrechetCertificate, SpannerError> {
    let WspdPath { path, pair, .. } = wspd_path(wspd, graph, u, v)?;
    let (a, b) = (graph.vertex(u), graph.vertex(v));
    let distance = dist(a, b);
    let frechet = frechet_polyline_segment(&path.polyline, &Segment::new(a, b), tol)?.distance;
    let radius = wspd.pairs[pair].radius;
    let bound = (2.0 * radius).min(2.0 * distance / wspd.s);
    if frechet > bound + tol {
        return Err(SpannerError::CertificateViolation {
            pair,
            path: path.vertex_indices,
            measured: frechet,
            radius,
            distance,
            bound,
        });
    }
    Ok(FrechetCertificate {
        pair,
        path: path.vertex_indices,
        frechet,
        radius,
        distance,
    })
}
