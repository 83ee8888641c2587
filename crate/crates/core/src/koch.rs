//! The Koch graphs `F_n`.
//!
//! `F_0` is the unit segment from `(0,0)` to `(1,0)`. `F_n` replaces every
//! edge of `F_{n-1}` by four edges of a third of its length, with the new
//! apex to the left of the edge's direction. `F_n` is a path whose stretch
//! between its extremes is `(4/3)^n`, yet every path in it stays within six
//! times the endpoint distance of the straight segment.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{dist, point_segment_distance, Point, Segment};
use crate::graph::{GeoGraph, GraphError, PairMax, PathResult};
use crate::hull::ConvexHull;

/// Largest generation built unless the caller raises the limit.
pub const DEFAULT_MAX_GENERATION: u32 = 8;

/// Additive slack on the lemma checks.
pub const LEMMA_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KochError {
    #[error("generation {n} exceeds the limit {max}")]
    GenerationTooLarge { n: u32, max: u32 },
    #[error("vertex index {index} out of range for {len} vertices")]
    VertexOutOfRange { index: usize, len: usize },
    #[error("a pair needs two distinct vertices, got {0} twice")]
    SameVertex(usize),
    #[error("({v1}, {v2}, {v3}) is not a Koch corner: {reason}")]
    InvalidTriple {
        v1: Point,
        v2: Point,
        v3: Point,
        reason: &'static str,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Eisenstein-integer coordinates `a + b*w`, `w = exp(i*pi/3)`, in units of
/// the edge length `3^-n`.
type Lattice = (i64, i64);

const DIRECTIONS: [Lattice; 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

/// Heading change, in sixths of a turn, contributed by a base-4 digit of an
/// edge index: the four children of an edge turn by 0, +1, -1, 0.
const DIGIT_TURN: [i64; 4] = [0, 1, -1, 0];

#[derive(Debug, Clone)]
pub struct KochGraph {
    n: u32,
    graph: GeoGraph,
    levels: Vec<u32>,
    lattice: Vec<Lattice>,
}

/// Builds `F_n` with the default generation limit.
pub fn koch_graph(n: u32) -> Result<KochGraph, KochError> {
    koch_graph_with_limit(n, DEFAULT_MAX_GENERATION)
}

pub fn koch_graph_with_limit(n: u32, max: u32) -> Result<KochGraph, KochError> {
    // 4^15 vertices would not fit comfortably in memory anyway
    if n > max || n > 15 {
        return Err(KochError::GenerationTooLarge { n, max });
    }
    let edges = 1usize << (2 * n);
    let mut lattice = Vec::with_capacity(edges + 1);
    let mut at: Lattice = (0, 0);
    lattice.push(at);
    for e in 0..edges {
        let heading = (0..n).map(|k| DIGIT_TURN[(e >> (2 * k)) & 3]).sum::<i64>();
        let (da, db) = DIRECTIONS[heading.rem_euclid(6) as usize];
        at = (at.0 + da, at.1 + db);
        lattice.push(at);
    }
    let scale = 3f64.powi(n as i32);
    let half_sqrt3 = 3f64.sqrt() / 2.0;
    let vertices = lattice
        .iter()
        .map(|&(a, b)| Point::new((a as f64 + 0.5 * b as f64) / scale, b as f64 * half_sqrt3 / scale))
        .collect();
    let graph = GeoGraph::with_edges(vertices, (0..edges).map(|e| (e, e + 1)))?;
    let levels = (0..=edges).map(|k| level_of_index(k, n)).collect();
    Ok(KochGraph {
        n,
        graph,
        levels,
        lattice,
    })
}

/// Level of the `k`-th vertex of `F_n`: `n` minus the number of trailing
/// base-4 zeros of `k`, and 0 at both extremes.
fn level_of_index(k: usize, n: u32) -> u32 {
    if k == 0 || k == 1 << (2 * n) {
        0
    } else {
        n - k.trailing_zeros() / 2
    }
}

/// Upper bound on `d_H(P(u,v), uv)` and lower bound on `d(u,v)` for a pair of level `i`.
pub fn level_bounds(i: u32) -> (f64, f64) {
    let sqrt3 = 3f64.sqrt();
    (sqrt3 / 3f64.powi(i as i32 - 1), sqrt3 / (2.0 * 3f64.powi(i as i32)))
}

/// The second-smallest entry of a level sequence, i.e. the smallest `i` such
/// that at least two entries are at most `i`. `None` for fewer than two entries.
pub fn level_of_sequence(levels: &[u32]) -> Option<u32> {
    let mut best = [u32::MAX; 2];
    for &l in levels {
        push_level(&mut best, l);
    }
    (best[1] != u32::MAX).then_some(best[1])
}

fn push_level(best: &mut [u32; 2], l: u32) {
    if l < best[0] {
        best[1] = best[0];
        best[0] = l;
    } else if l < best[1] {
        best[1] = l;
    }
}

/// Direction change at an interior vertex of `F_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleCase {
    /// Left turn by 60 degrees; 240 degrees measured on the right.
    Deg240,
    /// Right turn by 120 degrees; 60 degrees measured on the right.
    Deg60,
}

impl KochGraph {
    pub fn generation(&self) -> u32 {
        self.n
    }

    pub fn graph(&self) -> &GeoGraph {
        &self.graph
    }

    pub fn into_graph(self) -> GeoGraph {
        self.graph
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn vertex(&self, v: usize) -> Point {
        self.graph.vertex(v)
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    /// Exact coordinates as Eisenstein integers in units of `3^-n`.
    pub fn lattice(&self) -> &[(i64, i64)] {
        &self.lattice
    }

    fn check(&self, v: usize) -> Result<(), KochError> {
        if v < self.len() {
            Ok(())
        } else {
            Err(KochError::VertexOutOfRange {
                index: v,
                len: self.len(),
            })
        }
    }

    pub fn vertex_level(&self, v: usize) -> Result<u32, KochError> {
        self.check(v)?;
        Ok(self.levels[v])
    }

    /// Level of the pair: the second-smallest level on the path between them.
    pub fn pair_level(&self, u: usize, v: usize) -> Result<u32, KochError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(KochError::SameVertex(u));
        }
        let (a, b) = (u.min(v), u.max(v));
        Ok(level_of_sequence(&self.levels[a..=b]).expect("at least two vertices"))
    }

    /// `level_bounds` at the pair's level.
    pub fn pair_bounds(&self, u: usize, v: usize) -> Result<(f64, f64), KochError> {
        Ok(level_bounds(self.pair_level(u, v)?))
    }

    /// The unique path between `u` and `v`, in the direction `u -> v`.
    pub fn path(&self, u: usize, v: usize) -> Result<PathResult, KochError> {
        self.check(u)?;
        self.check(v)?;
        let indices: Vec<usize> = if u <= v {
            (u..=v).collect()
        } else {
            (v..=u).rev().collect()
        };
        Ok(PathResult::from_indices(&self.graph, indices))
    }

    /// Turn at an interior vertex; `None` at the extremes.
    pub fn angle_case(&self, v: usize) -> Option<AngleCase> {
        if v == 0 || v + 1 >= self.len() {
            return None;
        }
        let (p, q, r) = (self.lattice[v - 1], self.lattice[v], self.lattice[v + 1]);
        let (d1, d2) = ((q.0 - p.0, q.1 - p.1), (r.0 - q.0, r.1 - q.1));
        let h1 = DIRECTIONS.iter().position(|&d| d == d1).expect("unit step") as i64;
        let h2 = DIRECTIONS.iter().position(|&d| d == d2).expect("unit step") as i64;
        match (h2 - h1).rem_euclid(6) {
            1 => Some(AngleCase::Deg240),
            4 => Some(AngleCase::Deg60),
            turn => unreachable!("Koch curves only turn by +60 or -120 degrees, got {turn}"),
        }
    }

    /// Index step between consecutive vertices of `F_i` inside `F_n`.
    pub fn stride(&self, i: u32) -> usize {
        assert!(i <= self.n);
        1 << (2 * (self.n - i))
    }

    /// Stretch between `(0,0)` and `(1,0)`: the whole path length over 1.
    pub fn extreme_stretch(&self) -> f64 {
        self.graph.total_weight() / dist(self.vertex(0), self.vertex(self.len() - 1))
    }
}

/// Rectangle, in general not axis-parallel, given by its corners in order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundingRect {
    pub corners: [Point; 4],
    pub triple: [Point; 3],
    pub case: AngleCase,
}

impl BoundingRect {
    /// The bounding rectangle of three consecutive vertices of some `F_i`.
    ///
    /// For a 240-degree corner the rectangle has `v1v3` as a diagonal and a
    /// long side along `v1v2` when `l1 <= l3`, along `v2v3` otherwise. For a
    /// 60-degree corner `v1v3` is a side and `v2` lies on the opposite side.
    pub fn from_triple(v1: Point, v2: Point, v3: Point, l1: u32, l3: u32) -> Result<Self, KochError> {
        let invalid = |reason| KochError::InvalidTriple { v1, v2, v3, reason };
        let (e1, e2) = (v2 - v1, v3 - v2);
        let a = e1.norm();
        if a == 0.0 || (e2.norm() - a).abs() > 1e-9 * a {
            return Err(invalid("edges differ in length"));
        }
        let cos = e1.dot(e2) / (a * a);
        let sin = e1.cross(e2) / (a * a);
        let case = if (cos - 0.5).abs() < 1e-9 && sin > 0.0 {
            AngleCase::Deg240
        } else if (cos + 0.5).abs() < 1e-9 && sin < 0.0 {
            AngleCase::Deg60
        } else {
            return Err(invalid("turn is neither +60 nor -120 degrees"));
        };
        let corners = match case {
            AngleCase::Deg240 => {
                let axis = if l1 <= l3 { e1 } else { e2 };
                let along = axis * (1.0 / axis.norm());
                let across = along.perp();
                let diag = v3 - v1;
                [v1, v1 + along * diag.dot(along), v3, v1 + across * diag.dot(across)]
            }
            AngleCase::Deg60 => {
                let base = v3 - v1;
                let normal = base.perp() * (1.0 / base.norm());
                let height = (v2 - v1).dot(normal);
                let offset = normal * height;
                [v1, v3, v3 + offset, v1 + offset]
            }
        };
        Ok(Self {
            corners,
            triple: [v1, v2, v3],
            case,
        })
    }

    pub fn diagonal(&self) -> f64 {
        dist(self.corners[0], self.corners[2])
    }

    /// Containment with absolute slack `tol`.
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        let [c0, c1, _, c3] = self.corners;
        let (u, w) = (c1 - c0, c3 - c0);
        let (lu, lw) = (u.norm(), w.norm());
        let r = p - c0;
        let x = if lu > 0.0 { r.dot(u) / lu } else { 0.0 };
        let y = if lw > 0.0 { r.dot(w) / lw } else { 0.0 };
        (-tol..=lu + tol).contains(&x) && (-tol..=lw + tol).contains(&y)
    }
}

/// A pair breaking one of the level lemmas.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaViolation {
    pub pair: (usize, usize),
    pub level: u32,
    pub measured: f64,
    pub bound: f64,
}

/// Result of [`lemma_sweep`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    pub n: u32,
    pub pairs: u64,
    /// Pairs with `d_H(P(u,v), uv)` above the level bound.
    pub hausdorff_violations: Vec<LemmaViolation>,
    /// Pairs with `d(u,v)` below the level bound.
    pub distance_violations: Vec<LemmaViolation>,
    /// Largest `d_H(P(u,v), uv) / d(u,v)` over all pairs.
    pub max_hausdorff_ratio: PairMax,
    /// Largest certified upper bound on the symmetric Hausdorff ratio.
    pub max_symmetric_ratio: PairMax,
    /// Largest `d_H(P(u,v), uv) / (sqrt(3) / 3^(i-1))` over all pairs.
    pub max_hausdorff_to_bound: PairMax,
    /// Smallest `d(u,v) / (sqrt(3) / (2 * 3^i))` over all pairs.
    pub min_distance_to_bound: f64,
}

impl LemmaReport {
    /// True if no violation was found. Violations at levels 0 and 1 count:
    /// the bound formulas are tested at every level.
    pub fn passed(&self) -> bool {
        self.hausdorff_violations.is_empty() && self.distance_violations.is_empty()
    }

    /// Violations at levels below 2, where the bounds are formula extensions.
    pub fn low_level_violations(&self) -> usize {
        self.hausdorff_violations
            .iter()
            .chain(&self.distance_violations)
            .filter(|v| v.level < 2)
            .count()
    }
}

#[derive(Debug, Clone)]
struct SweepAcc {
    pairs: u64,
    hausdorff_violations: Vec<LemmaViolation>,
    distance_violations: Vec<LemmaViolation>,
    max_ratio: PairMax,
    max_symmetric: PairMax,
    max_to_bound: PairMax,
    min_distance_to_bound: f64,
}

impl SweepAcc {
    fn new() -> Self {
        let zero = PairMax {
            value: f64::NEG_INFINITY,
            pair: (usize::MAX, usize::MAX),
        };
        Self {
            pairs: 0,
            hausdorff_violations: Vec::new(),
            distance_violations: Vec::new(),
            max_ratio: zero,
            max_symmetric: zero,
            max_to_bound: zero,
            min_distance_to_bound: f64::INFINITY,
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.pairs += other.pairs;
        self.hausdorff_violations.extend(other.hausdorff_violations);
        self.distance_violations.extend(other.distance_violations);
        self.max_ratio = self.max_ratio.merge(other.max_ratio);
        self.max_symmetric = self.max_symmetric.merge(other.max_symmetric);
        self.max_to_bound = self.max_to_bound.merge(other.max_to_bound);
        self.min_distance_to_bound = self.min_distance_to_bound.min(other.min_distance_to_bound);
        self
    }
}

/// Checks both level lemmas on every pair of `F_n`.
///
/// For each source `u` the sweep walks `v = u+1, u+2, ...` keeping the convex
/// hull of `P(u,v)`, whose vertices carry the maxima of the distance to `uv`
/// and of the offset from the line `uv`.
pub fn lemma_sweep(k: &KochGraph) -> LemmaReport {
    let pts = k.graph.vertices();
    let levels = &k.levels;
    let n = pts.len();
    let mut acc = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut acc = SweepAcc::new();
            let mut hull = ConvexHull::new();
            hull.insert(pts[u]);
            let mut best = [u32::MAX; 2];
            push_level(&mut best, levels[u]);
            for v in u + 1..n {
                hull.insert(pts[v]);
                push_level(&mut best, levels[v]);
                let i = best[1];
                let (h_bound, d_bound) = level_bounds(i);
                let s = Segment::new(pts[u], pts[v]);
                let d = s.length();
                let dir = (s.b - s.a) * (1.0 / d);
                let (forward, _) = hull.max_by(|p| point_segment_distance(p, &s)).expect("non-empty");
                let (offset, _) = hull.max_by(|p| dir.cross(p - s.a).abs()).expect("non-empty");
                acc.pairs += 1;
                if forward > h_bound + LEMMA_SLACK {
                    acc.hausdorff_violations.push(LemmaViolation {
                        pair: (u, v),
                        level: i,
                        measured: forward,
                        bound: h_bound,
                    });
                }
                if d < d_bound - LEMMA_SLACK {
                    acc.distance_violations.push(LemmaViolation {
                        pair: (u, v),
                        level: i,
                        measured: d,
                        bound: d_bound,
                    });
                }
                acc.max_ratio = acc.max_ratio.merge(PairMax {
                    value: forward / d,
                    pair: (u, v),
                });
                acc.max_symmetric = acc.max_symmetric.merge(PairMax {
                    value: forward.max(offset) / d,
                    pair: (u, v),
                });
                acc.max_to_bound = acc.max_to_bound.merge(PairMax {
                    value: forward / h_bound,
                    pair: (u, v),
                });
                acc.min_distance_to_bound = acc.min_distance_to_bound.min(d / d_bound);
            }
            acc
        })
        .reduce(SweepAcc::new, SweepAcc::merge);
    acc.hausdorff_violations.sort_by_key(|v| v.pair);
    acc.distance_violations.sort_by_key(|v| v.pair);
    LemmaReport {
        n: k.n,
        pairs: acc.pairs,
        hausdorff_violations: acc.hausdorff_violations,
        distance_violations: acc.distance_violations,
        max_hausdorff_ratio: acc.max_ratio,
        max_symmetric_ratio: acc.max_symmetric,
        max_hausdorff_to_bound: acc.max_to_bound,
        min_distance_to_bound: acc.min_distance_to_bound,
    }
}

/// A failed structural check, with the vertices involved.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureViolation {
    pub check: &'static str,
    pub vertices: Vec<usize>,
    pub detail: String,
}

/// Every edge has an endpoint of level `n`.
pub fn check_edge_levels(k: &KochGraph) -> Vec<StructureViolation> {
    (0..k.len() - 1)
        .filter(|&e| k.levels[e] != k.n && k.levels[e + 1] != k.n)
        .map(|e| StructureViolation {
            check: "edge_levels",
            vertices: vec![e, e + 1],
            detail: format!("levels {} and {}", k.levels[e], k.levels[e + 1]),
        })
        .collect()
}

/// Exactly three level-`i` vertices lie strictly between two vertices that
/// are adjacent in `F_{i-1}`, for every `1 <= i <= n`.
pub fn check_three_between(k: &KochGraph) -> Vec<StructureViolation> {
    let mut out = Vec::new();
    for i in 1..=k.n {
        let step = k.stride(i - 1);
        for a in (0..k.len() - 1).step_by(step) {
            let count = k.levels[a + 1..a + step].iter().filter(|&&l| l == i).count();
            if count != 3 {
                out.push(StructureViolation {
                    check: "three_between",
                    vertices: vec![a, a + step],
                    detail: format!("{count} vertices of level {i}"),
                });
            }
        }
    }
    out
}

/// Triples consecutive in `F_i`, `1 <= i <= max_level`, whose bounding
/// rectangle misses part of the path between the outer two. On a level tie
/// between `v1` and `v3` both candidate rectangles are checked.
pub fn check_rectangles(k: &KochGraph, max_level: u32) -> Vec<StructureViolation> {
    let mut out = Vec::new();
    for i in 1..=max_level.min(k.n) {
        let step = k.stride(i);
        let edge = 3f64.powi(-(i as i32));
        let diag_bound = 3f64.sqrt() * edge;
        for a in (0..k.len().saturating_sub(2 * step)).step_by(step) {
            let (b, c) = (a + step, a + 2 * step);
            let (l1, l3) = (k.levels[a], k.levels[c]);
            let orders: &[(u32, u32)] = if l1 == l3 { &[(0, 1), (1, 0)] } else { &[(l1, l3)] };
            for &(o1, o3) in orders {
                let rect = match BoundingRect::from_triple(k.vertex(a), k.vertex(b), k.vertex(c), o1, o3) {
                    Ok(r) => r,
                    Err(e) => {
                        out.push(StructureViolation {
                            check: "rectangle",
                            vertices: vec![a, b, c],
                            detail: e.to_string(),
                        });
                        continue;
                    }
                };
                if rect.diagonal() > diag_bound + LEMMA_SLACK {
                    out.push(StructureViolation {
                        check: "rectangle",
                        vertices: vec![a, b, c],
                        detail: format!("diagonal {} exceeds {}", rect.diagonal(), diag_bound),
                    });
                }
                if let Some(v) = (a..=c).find(|&v| !rect.contains(k.vertex(v), LEMMA_SLACK)) {
                    out.push(StructureViolation {
                        check: "rectangle",
                        vertices: vec![a, b, c, v],
                        detail: format!("vertex {v} outside the rectangle of level {i}"),
                    });
                }
            }
        }
    }
    out
}
