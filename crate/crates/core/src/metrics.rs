//! Hausdorff and Frechet distances between a polyline and a segment.
//!
//! The path-to-segment Hausdorff distance is exact: the distance to a segment
//! is convex along every edge, so its maximum over the polyline is attained at
//! a vertex. The segment-to-path direction and the continuous Frechet distance
//! are computed to a caller-supplied absolute tolerance.
//!
//! [`discrete_frechet`] and [`densify`] exist mainly as oracles for the
//! continuous computation.

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{dist, point_segment_distance, Point, Polyline, Segment};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),
    #[error("maximum edge length must be positive, got {0}")]
    NonPositiveMaxEdge(f64),
    #[error("polyline endpoints {path_start}..{path_end} do not match segment {seg_start}..{seg_end}")]
    EndpointMismatch {
        path_start: Point,
        path_end: Point,
        seg_start: Point,
        seg_end: Point,
    },
}

fn check_tol(tol: f64) -> Result<(), MetricError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(MetricError::NonPositiveTolerance(tol))
    }
}

/// Both directed Hausdorff distances between a polyline and a segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HausdorffResult {
    /// Exact; attained at `witness_point`.
    pub directed_path_to_segment: f64,
    /// Within `tolerance` of the true value; attained at `segment_witness`.
    pub directed_segment_to_path: f64,
    pub symmetric: f64,
    /// The polyline vertex farthest from the segment.
    pub witness_point: Point,
    pub segment_witness: Point,
    pub tolerance: f64,
}

/// One vertex of the free-space scan: the part `[lo, hi]` of the segment
/// (arc-length from its start) within the leash of the vertex, and the
/// smallest owner position `reach` from which the vertex can be matched.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FreeInterval {
    pub vertex: usize,
    pub lo: f64,
    pub hi: f64,
    pub reach: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrechetResult {
    pub distance: f64,
    pub tolerance: f64,
    /// Free-space intervals at `distance`, when requested.
    pub decision_trace: Option<Vec<FreeInterval>>,
}

/// Exact maximum distance from a point of `path` to the segment `s`.
pub fn directed_hausdorff_path_to_segment(path: &Polyline, s: &Segment) -> f64 {
    path_to_segment_with_witness(path, s).0
}

fn path_to_segment_with_witness(path: &Polyline, s: &Segment) -> (f64, Point) {
    path.vertices()
        .iter()
        .map(|&p| (point_segment_distance(p, s), p))
        .fold((f64::NEG_INFINITY, path.first()), |best, cur| {
            if cur.0 > best.0 {
                cur
            } else {
                best
            }
        })
}

/// Maximum over points `q` of `s` of the distance from `q` to `path`, within `tol`.
///
/// Branch and bound over sub-intervals of `s`. An interval is discarded once
/// an upper bound on its maximum is within `tol` of the best sampled value.
/// Two bounds are used: the 1-Lipschitz bound from the interval's endpoint
/// values, and, for each edge `e` of the path, the larger of the endpoint
/// distances to `e` (the distance to a fixed edge is convex along `s`).
pub fn directed_hausdorff_segment_to_path(
    s: &Segment,
    path: &Polyline,
    tol: f64,
) -> Result<f64, MetricError> {
    check_tol(tol)?;
    Ok(segment_to_path_search(s, path, tol).0)
}

fn segment_to_path_search(s: &Segment, path: &Polyline, tol: f64) -> (f64, Point) {
    let len = s.length();
    if len == 0.0 {
        return (path.distance_to(s.a), s.a);
    }
    let edges: Vec<Segment> = if path.len() == 1 {
        vec![Segment::new(path.first(), path.first())]
    } else {
        path.edges().collect()
    };
    let probe = |t: f64| -> (f64, Vec<f64>) {
        let q = s.at(t);
        let d: Vec<f64> = edges.iter().map(|e| point_segment_distance(q, e)).collect();
        let g = d.iter().copied().fold(f64::INFINITY, f64::min);
        (g, d)
    };

    let (g0, d0) = probe(0.0);
    let (g1, d1) = probe(1.0);
    let (mut best, mut best_t) = if g1 > g0 { (g1, 1.0) } else { (g0, 0.0) };
    // samples[i] = (t, g(t), per-edge distances)
    let mut samples = vec![(0.0, g0, d0), (1.0, g1, d1)];
    let mut stack = vec![(0usize, 1usize)];
    while let Some((ia, ib)) = stack.pop() {
        let (ta, ga, ref da) = samples[ia];
        let (tb, gb, ref db) = samples[ib];
        let lipschitz = (ga + gb + (tb - ta) * len) / 2.0;
        let convex = da
            .iter()
            .zip(db)
            .map(|(a, b)| a.max(*b))
            .fold(f64::INFINITY, f64::min);
        if lipschitz.min(convex) <= best + tol {
            continue;
        }
        let tm = 0.5 * (ta + tb);
        let (gm, dm) = probe(tm);
        if gm > best {
            best = gm;
            best_t = tm;
        }
        samples.push((tm, gm, dm));
        let im = samples.len() - 1;
        stack.push((im, ib));
        stack.push((ia, im));
    }
    (best, s.at(best_t))
}

/// Upper bound on the segment-to-path direction for a path from `s.a` to `s.b`.
///
/// Every line perpendicular to `s` through an interior point `q` separates the
/// endpoints, so the path crosses it at some point `p` with `d(q, p)` equal to
/// the offset of `p` from the line through `s`. The offset is affine along each
/// edge, so the largest vertex offset bounds `d(q, path)` for every `q`. This
/// bound never exceeds the path-to-segment direction. Returns `None` when the
/// endpoints do not match or the segment is degenerate.
pub fn segment_to_path_upper_bound(path: &Polyline, s: &Segment) -> Option<f64> {
    let len = s.length();
    if len == 0.0 || path.first() != s.a || path.last() != s.b {
        return None;
    }
    let dir = (s.b - s.a) * (1.0 / len);
    Some(
        path.vertices()
            .iter()
            .map(|&p| dir.cross(p - s.a).abs())
            .fold(0.0, f64::max),
    )
}

/// Both directions of the Hausdorff distance between `path` and `s`.
pub fn hausdorff(path: &Polyline, s: &Segment, tol: f64) -> Result<HausdorffResult, MetricError> {
    check_tol(tol)?;
    let (forward, witness_point) = path_to_segment_with_witness(path, s);
    let (backward, segment_witness) = segment_to_path_search(s, path, tol);
    Ok(HausdorffResult {
        directed_path_to_segment: forward,
        directed_segment_to_path: backward,
        symmetric: forward.max(backward),
        witness_point,
        segment_witness,
        tolerance: tol,
    })
}

/// A polyline expressed in the frame of a segment: `along` is the signed
/// coordinate in the direction `a -> b`, `across` the signed offset.
struct SegmentFrame {
    len: f64,
    along: Vec<f64>,
    across: Vec<f64>,
    start_gap: f64,
    end_gap: f64,
}

impl SegmentFrame {
    fn new(path: &Polyline, s: &Segment) -> Self {
        let len = s.length();
        let dir = if len > 0.0 {
            (s.b - s.a) * (1.0 / len)
        } else {
            Point { x: 1.0, y: 0.0 }
        };
        let (along, across) = path
            .vertices()
            .iter()
            .map(|&p| {
                let r = p - s.a;
                (r.dot(dir), dir.cross(r))
            })
            .unzip();
        Self {
            len,
            along,
            across,
            start_gap: dist(path.first(), s.a),
            end_gap: dist(path.last(), s.b),
        }
    }

    fn free_interval(&self, k: usize, eps: f64) -> Option<(f64, f64)> {
        let y = self.across[k];
        if y.abs() > eps {
            return None;
        }
        let w = (eps * eps - y * y).max(0.0).sqrt();
        let lo = (self.along[k] - w).max(0.0);
        let hi = (self.along[k] + w).min(self.len);
        (lo <= hi).then_some((lo, hi))
    }

    /// Monotone reachability scan through the free-space strip of the path
    /// against the single segment. Each cell's free space is convex and spans
    /// the whole segment, so the reachable part of every vertex boundary is
    /// `[reach, hi]` with `reach` the running maximum of the `lo` values.
    fn decide(&self, eps: f64, mut trace: Option<&mut Vec<FreeInterval>>) -> bool {
        // absorbs rounding in sqrt(eps^2 - y^2) at a tight leash
        let eps = eps * (1.0 + 8.0 * f64::EPSILON) + f64::MIN_POSITIVE;
        if self.start_gap > eps || self.end_gap > eps {
            return false;
        }
        let mut reach = 0.0f64;
        for k in 0..self.along.len() {
            let Some((lo, hi)) = self.free_interval(k, eps) else {
                return false;
            };
            reach = reach.max(lo);
            if reach > hi {
                return false;
            }
            if let Some(t) = trace.as_deref_mut() {
                t.push(FreeInterval {
                    vertex: k,
                    lo,
                    hi,
                    reach,
                });
            }
        }
        true
    }

    /// Leash of the walk that keeps the owner at the running maximum of the
    /// clamped projections of the dog's vertices.
    fn greedy_walk_leash(&self) -> f64 {
        let mut owner = 0.0f64;
        let mut leash = self.start_gap.max(self.end_gap);
        for k in 0..self.along.len() {
            owner = owner.max(self.along[k].clamp(0.0, self.len));
            leash = leash.max((self.along[k] - owner).hypot(self.across[k]));
        }
        leash
    }

    fn lower_bound(&self) -> f64 {
        let vertex_gap = (0..self.along.len())
            .map(|k| {
                let x = self.along[k];
                let dx = if x < 0.0 {
                    -x
                } else if x > self.len {
                    x - self.len
                } else {
                    0.0
                };
                dx.hypot(self.across[k])
            })
            .fold(0.0, f64::max);
        vertex_gap.max(self.start_gap).max(self.end_gap)
    }
}

/// Decides whether the Frechet distance between `path` and `s` is at most `eps`.
pub fn frechet_decision(path: &Polyline, s: &Segment, eps: f64) -> bool {
    SegmentFrame::new(path, s).decide(eps, None)
}

fn endpoints_match(path: &Polyline, s: &Segment, tol: f64) -> Result<(), MetricError> {
    if dist(path.first(), s.a) <= tol && dist(path.last(), s.b) <= tol {
        Ok(())
    } else {
        Err(MetricError::EndpointMismatch {
            path_start: path.first(),
            path_end: path.last(),
            seg_start: s.a,
            seg_end: s.b,
        })
    }
}

/// Continuous Frechet distance between `path` and `s`, within `tol`.
///
/// Bisects the free-space decision between a lower bound (the farthest vertex
/// from the segment) and the leash of an explicit monotone walk. When the
/// lower bound is already feasible it is returned as is.
pub fn frechet_polyline_segment(
    path: &Polyline,
    s: &Segment,
    tol: f64,
) -> Result<FrechetResult, MetricError> {
    check_tol(tol)?;
    endpoints_match(path, s, tol)?;
    let distance = frechet_value(&SegmentFrame::new(path, s), tol);
    Ok(FrechetResult {
        distance,
        tolerance: tol,
        decision_trace: None,
    })
}

/// As [`frechet_polyline_segment`], also recording the free-space scan at the result.
pub fn frechet_polyline_segment_traced(
    path: &Polyline,
    s: &Segment,
    tol: f64,
) -> Result<FrechetResult, MetricError> {
    check_tol(tol)?;
    endpoints_match(path, s, tol)?;
    let frame = SegmentFrame::new(path, s);
    let distance = frechet_value(&frame, tol);
    let mut trace = Vec::with_capacity(path.len());
    frame.decide(distance, Some(&mut trace));
    Ok(FrechetResult {
        distance,
        tolerance: tol,
        decision_trace: Some(trace),
    })
}

fn frechet_value(frame: &SegmentFrame, tol: f64) -> f64 {
    if frame.len == 0.0 {
        return frame.lower_bound();
    }
    let mut lo = frame.lower_bound();
    if frame.decide(lo, None) {
        return lo;
    }
    let mut hi = frame.greedy_walk_leash().max(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if frame.decide(mid, None) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Discrete Frechet distance over the vertex sequences of `a` and `b`.
pub fn discrete_frechet(a: &Polyline, b: &Polyline) -> f64 {
    let (pa, pb) = (a.vertices(), b.vertices());
    let mut prev = vec![0.0f64; pb.len()];
    let mut cur = vec![0.0f64; pb.len()];
    for (i, &p) in pa.iter().enumerate() {
        for (j, &q) in pb.iter().enumerate() {
            let d = dist(p, q);
            cur[j] = match (i, j) {
                (0, 0) => d,
                (0, _) => cur[j - 1].max(d),
                (_, 0) => prev[0].max(d),
                _ => prev[j].min(prev[j - 1]).min(cur[j - 1]).max(d),
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[pb.len() - 1]
}

/// Subdivides every edge into equal pieces no longer than `max_edge`.
pub fn densify(path: &Polyline, max_edge: f64) -> Result<Polyline, MetricError> {
    if !(max_edge > 0.0) {
        return Err(MetricError::NonPositiveMaxEdge(max_edge));
    }
    let v = path.vertices();
    let mut out = Vec::with_capacity(v.len());
    out.push(v[0]);
    for w in v.windows(2) {
        let pieces = (dist(w[0], w[1]) / max_edge).ceil().max(1.0) as usize;
        for k in 1..pieces {
            out.push(w[0].lerp(w[1], k as f64 / pieces as f64));
        }
        out.push(w[1]);
    }
    Ok(Polyline::new(out).expect("non-empty"))
}
