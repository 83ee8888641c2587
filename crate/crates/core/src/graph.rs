//! Euclidean geometric graphs.
//!
//! Edge weights are never stored independently of the geometry: they are the
//! Euclidean distances of the endpoints, computed when the edge is inserted.

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{dist, GeometryError, Point, Polyline};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("vertices {first} and {second} coincide at {point}")]
    DuplicatePoint {
        first: usize,
        second: usize,
        point: Point,
    },
    #[error("vertex index {index} out of range for {len} vertices")]
    VertexOutOfRange { index: usize, len: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) already present")]
    DuplicateEdge(usize, usize),
    #[error("stretch is undefined for a vertex paired with itself ({0})")]
    SameVertex(usize),
    #[error("need at least {needed} vertices, got {got}")]
    TooFewVertices { needed: usize, got: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A path in a graph: vertex indices, their geometry, and total length.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathResult {
    pub vertex_indices: Vec<usize>,
    pub polyline: Polyline,
    pub length: f64,
}

impl PathResult {
    pub fn from_indices(graph: &GeoGraph, vertex_indices: Vec<usize>) -> Self {
        let points: Vec<Point> = vertex_indices.iter().map(|&i| graph.vertex(i)).collect();
        let polyline = Polyline::new(points).expect("path has a vertex");
        let length = polyline.length();
        Self {
            vertex_indices,
            polyline,
            length,
        }
    }
}

/// Undirected graph over distinct planar points with Euclidean edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct GeoGraph {
    vertices: Vec<Point>,
    adjacency: Vec<Vec<(usize, f64)>>,
    edges: BTreeSet<(usize, usize)>,
}

impl GeoGraph {
    /// Edgeless graph. Fails if two points coincide.
    pub fn new(vertices: Vec<Point>) -> Result<Self, GraphError> {
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by(|&i, &j| {
            let (p, q) = (vertices[i], vertices[j]);
            p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)).then(i.cmp(&j))
        });
        if let Some(w) = order.windows(2).find(|w| vertices[w[0]] == vertices[w[1]]) {
            return Err(GraphError::DuplicatePoint {
                first: w[0].min(w[1]),
                second: w[0].max(w[1]),
                point: vertices[w[0]],
            });
        }
        let adjacency = vec![Vec::new(); vertices.len()];
        Ok(Self {
            vertices,
            adjacency,
            edges: BTreeSet::new(),
        })
    }

    pub fn with_edges(
        vertices: Vec<Point>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Self::new(vertices)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn check(&self, index: usize) -> Result<(), GraphError> {
        if index < self.vertices.len() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                index,
                len: self.vertices.len(),
            })
        }
    }

    /// Inserts edge `{u, v}` and returns its weight.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<f64, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let key = (u.min(v), u.max(v));
        if !self.edges.insert(key) {
            return Err(GraphError::DuplicateEdge(key.0, key.1));
        }
        let w = dist(self.vertices[u], self.vertices[v]);
        self.adjacency[u].push((v, w));
        self.adjacency[v].push((u, w));
        Ok(w)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i]
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn neighbors(&self, u: usize) -> &[(usize, f64)] {
        &self.adjacency[u]
    }

    /// Edges as `(u, v, weight)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.edges
            .iter()
            .map(|&(u, v)| (u, v, dist(self.vertices[u], self.vertices[v])))
    }

    pub fn total_weight(&self) -> f64 {
        self.edges().map(|(_, _, w)| w).sum()
    }

    pub fn shortest_path_tree(&self, source: usize) -> Result<ShortestPathTree, GraphError> {
        self.check(source)?;
        Ok(dijkstra(self, source, f64::INFINITY))
    }

    /// Graph distance from `u` to `v`, or `None` when it exceeds `limit`.
    pub fn distance_within(&self, u: usize, v: usize, limit: f64) -> Result<Option<f64>, GraphError> {
        self.check(u)?;
        self.check(v)?;
        let tree = dijkstra(self, u, limit);
        Ok(tree.dist[v].is_finite().then_some(tree.dist[v]))
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            metadata: None,
        }
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Self, GraphError> {
        Self::with_edges(doc.vertices.clone(), doc.edges.iter().map(|e| (e[0], e[1])))
    }
}

/// On-disk graph format. Weights are recomputed on load.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub vertices: Vec<Point>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<serde_json::Map<String, serde_json::Value>>,
}

/// Single-source shortest paths. `order` lists reached vertices in the order
/// they were settled, so every vertex appears after its predecessor.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortestPathTree {
    pub source: usize,
    pub dist: Vec<f64>,
    pub pred: Vec<Option<usize>>,
    pub order: Vec<usize>,
}

impl ShortestPathTree {
    pub fn reaches(&self, v: usize) -> bool {
        self.dist[v].is_finite()
    }

    /// Vertex indices from the source to `v`.
    pub fn indices_to(&self, v: usize) -> Option<Vec<usize>> {
        if !self.reaches(v) {
            return None;
        }
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.pred[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        Some(path)
    }

    pub fn path_to(&self, graph: &GeoGraph, v: usize) -> Option<PathResult> {
        self.indices_to(v).map(|idx| PathResult::from_indices(graph, idx))
    }
}

#[derive(PartialEq)]
struct Entry {
    dist: f64,
    vertex: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on (dist, vertex)
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra with settle order (distance, index). Among equally short
/// routes through already-settled vertices the smallest predecessor wins.
fn dijkstra(graph: &GeoGraph, source: usize, limit: f64) -> ShortestPathTree {
    let n = graph.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut settled = vec![false; n];
    let mut order = Vec::new();
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Entry {
        dist: 0.0,
        vertex: source,
    });
    while let Some(Entry { dist: d, vertex: u }) = heap.pop() {
        if settled[u] || d > dist[u] {
            continue;
        }
        if d > limit {
            break;
        }
        settled[u] = true;
        order.push(u);
        for &(w, weight) in graph.neighbors(u) {
            if settled[w] {
                continue;
            }
            let nd = d + weight;
            let better = nd < dist[w] || (nd == dist[w] && pred[w].is_some_and(|p| u < p));
            if better {
                dist[w] = nd;
                pred[w] = Some(u);
                heap.push(Entry { dist: nd, vertex: w });
            }
        }
    }
    for v in 0..n {
        if !settled[v] {
            dist[v] = f64::INFINITY;
            pred[v] = None;
        }
    }
    ShortestPathTree {
        source,
        dist,
        pred,
        order,
    }
}

/// The complete Euclidean graph over `points`.
pub fn complete_graph(points: &[Point]) -> Result<GeoGraph, GraphError> {
    let n = points.len();
    GeoGraph::with_edges(
        points.to_vec(),
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))),
    )
}

/// Minimum-weight path from `u` to `v`; `Ok(None)` if `v` is unreachable.
pub fn shortest_path(graph: &GeoGraph, u: usize, v: usize) -> Result<Option<PathResult>, GraphError> {
    graph.check(v)?;
    Ok(graph.shortest_path_tree(u)?.path_to(graph, v))
}

/// Shortest-path length over Euclidean distance; infinite if unreachable.
pub fn stretch(graph: &GeoGraph, u: usize, v: usize) -> Result<f64, GraphError> {
    graph.check(u)?;
    graph.check(v)?;
    if u == v {
        return Err(GraphError::SameVertex(u));
    }
    let tree = graph.shortest_path_tree(u)?;
    Ok(tree.dist[v] / dist(graph.vertex(u), graph.vertex(v)))
}

/// A maximum over vertex pairs together with the pair attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairMax {
    pub value: f64,
    pub pair: (usize, usize),
}

impl PairMax {
    /// Larger value wins; equal values go to the lexicographically smaller pair.
    pub fn merge(self, other: PairMax) -> PairMax {
        match self.value.total_cmp(&other.value) {
            Ordering::Greater => self,
            Ordering::Less => other,
            Ordering::Equal => {
                if other.pair < self.pair {
                    other
                } else {
                    self
                }
            }
        }
    }
}

/// Maximum stretch over all vertex pairs, one Dijkstra per source.
pub fn max_stretch(graph: &GeoGraph) -> Result<PairMax, GraphError> {
    let n = graph.len();
    if n < 2 {
        return Err(GraphError::TooFewVertices { needed: 2, got: n });
    }
    let best = (0..n - 1)
        .into_par_iter()
        .map(|u| {
            let tree = dijkstra(graph, u, f64::INFINITY);
            (u + 1..n)
                .map(|v| PairMax {
                    value: tree.dist[v] / dist(graph.vertex(u), graph.vertex(v)),
                    pair: (u, v),
                })
                .reduce(PairMax::merge)
                .expect("u < n - 1")
        })
        .reduce_with(PairMax::merge)
        .expect("n >= 2");
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn square() -> Vec<Point> {
        vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)]
    }

    #[test]
    fn complete_graph_edges() {
        assert_eq!(complete_graph(&[pt(0.0, 0.0), pt(1.0, 0.0)]).unwrap().edge_count(), 1);
        let g = complete_graph(&square()).unwrap();
        assert_eq!(g.edge_count(), 6);
        let max = g.edges().map(|(_, _, w)| w).fold(0.0, f64::max);
        assert_eq!(max, 2f64.sqrt());
        assert!(matches!(
            complete_graph(&[pt(0.0, 0.0), pt(1.0, 0.0), pt(0.0, 0.0)]),
            Err(GraphError::DuplicatePoint { first: 0, second: 2, .. })
        ));
    }

    #[test]
    fn edge_validation() {
        let mut g = GeoGraph::new(square()).unwrap();
        assert_eq!(g.add_edge(0, 2).unwrap(), 2f64.sqrt());
        assert_eq!(g.add_edge(2, 0), Err(GraphError::DuplicateEdge(0, 2)));
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        assert!(matches!(g.add_edge(0, 7), Err(GraphError::VertexOutOfRange { index: 7, .. })));
    }

    #[test]
    fn shortest_paths() {
        let g = complete_graph(&square()).unwrap();
        let p = shortest_path(&g, 0, 2).unwrap().unwrap();
        assert_eq!(p.vertex_indices, vec![0, 2]);
        assert_eq!(p.length, 2f64.sqrt());

        let line = GeoGraph::with_edges(vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(2.0, 0.0)], [(0, 1), (1, 2)]).unwrap();
        let p = shortest_path(&line, 0, 2).unwrap().unwrap();
        assert_eq!(p.length, 2.0);
        assert_eq!(p.vertex_indices, vec![0, 1, 2]);

        let apart = GeoGraph::new(vec![pt(0.0, 0.0), pt(1.0, 0.0)]).unwrap();
        assert_eq!(shortest_path(&apart, 0, 1).unwrap(), None);
    }

    #[test]
    fn tie_break_prefers_smaller_predecessor() {
        // two equal routes 0-1-3 and 0-2-3
        let g = GeoGraph::with_edges(
            vec![pt(0.0, 0.0), pt(1.0, 1.0), pt(1.0, -1.0), pt(2.0, 0.0)],
            [(0, 2), (2, 3), (0, 1), (1, 3)],
        )
        .unwrap();
        assert_eq!(shortest_path(&g, 0, 3).unwrap().unwrap().vertex_indices, vec![0, 1, 3]);
    }

    #[test]
    fn stretch_examples() {
        let g = complete_graph(&square()).unwrap();
        assert_eq!(stretch(&g, 0, 2).unwrap(), 1.0);
        assert_eq!(max_stretch(&g).unwrap().value, 1.0);
        let cycle = GeoGraph::with_edges(square(), [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!((stretch(&cycle, 0, 2).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(stretch(&cycle, 1, 1), Err(GraphError::SameVertex(1)));
        let apart = GeoGraph::new(vec![pt(0.0, 0.0), pt(1.0, 0.0)]).unwrap();
        assert_eq!(max_stretch(&apart).unwrap().value, f64::INFINITY);
        assert!(max_stretch(&GeoGraph::new(vec![pt(0.0, 0.0)]).unwrap()).is_err());
    }

    #[test]
    fn document_round_trip_recomputes_weights() {
        let g = GeoGraph::with_edges(square(), [(0, 1), (1, 2)]).unwrap();
        let json = serde_json::to_string(&g.to_document()).unwrap();
        assert_eq!(json, r#"{"vertices":[[0.0,0.0],[1.0,0.0],[1.0,1.0],[0.0,1.0]],"edges":[[0,1],[1,2]]}"#);
        let back = GeoGraph::from_document(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, g);
        let bad: GraphDocument = serde_json::from_str(r#"{"vertices":[[0,0],[1,0]],"edges":[[0,0]]}"#).unwrap();
        assert_eq!(GeoGraph::from_document(&bad), Err(GraphError::SelfLoop(0)));
    }

    fn random_graph() -> impl Strategy<Value = GeoGraph> {
        (
            prop::collection::btree_set((0i32..50, 0i32..50), 3..12),
            prop::collection::vec((0usize..100, 0usize..100), 0..30),
        )
            .prop_map(|(pts, extra)| {
                let points: Vec<Point> = pts.into_iter().map(|(x, y)| pt(x as f64, y as f64)).collect();
                let n = points.len();
                let mut g = GeoGraph::new(points).unwrap();
                for i in 0..n - 1 {
                    g.add_edge(i, i + 1).unwrap();
                }
                for (a, b) in extra {
                    let _ = g.add_edge(a % n, b % n);
                }
                g
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn shortest_path_at_least_euclidean(g in random_graph()) {
            for u in 0..g.len() {
                let tree = g.shortest_path_tree(u).unwrap();
                for v in 0..g.len() {
                    prop_assert!(tree.dist[v] >= dist(g.vertex(u), g.vertex(v)) * (1.0 - 1e-12));
                    if let Some(p) = tree.path_to(&g, v) {
                        prop_assert!((p.length - tree.dist[v]).abs() <= 1e-9);
                        for w in p.vertex_indices.windows(2) {
                            prop_assert!(g.has_edge(w[0], w[1]));
                        }
                    }
                }
            }
        }

        #[test]
        fn adding_an_edge_never_increases_max_stretch(g in random_graph(), a in 0usize..100, b in 0usize..100) {
            let before = max_stretch(&g).unwrap().value;
            let mut h = g.clone();
            let (a, b) = (a % g.len(), b % g.len());
            if h.add_edge(a, b).is_ok() {
                prop_assert!(max_stretch(&h).unwrap().value <= before * (1.0 + 1e-12));
            }
        }

        #[test]
        fn stretch_is_scale_invariant(g in random_graph(), scale in prop::sample::select(vec![0.5, 3.0])) {
            let scaled = GeoGraph::with_edges(
                g.vertices().iter().map(|&p| p * scale).collect(),
                g.edges().map(|(u, v, _)| (u, v)),
            ).unwrap();
            let a = max_stretch(&g).unwrap().value;
            let b = max_stretch(&scaled).unwrap().value;
            prop_assert!((a - b).abs() <= 1e-9 * a);
        }
    }
}
