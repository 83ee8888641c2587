//! Path-greedy spanner.

use crate::geometry::{dist, Point};
use crate::graph::GeoGraph;

use super::SpannerError;

/// Relative slack on the `t * d` comparison, so that a pair whose graph
/// distance equals `t * d` up to rounding does not receive a redundant edge.
const GREEDY_REL_TOL: f64 = 1e-12;

/// Adds edges in order of increasing length, skipping a pair whenever the
/// current graph already connects it within `t` times its distance. Pairs of
/// equal length are taken in lexicographic index order.
pub fn path_greedy_spanner(points: &[Point], t: f64) -> Result<GeoGraph, SpannerError> {
    if !(t >= 1.0) || !t.is_finite() {
        return Err(SpannerError::StretchBelowOne(t));
    }
    let mut graph = GeoGraph::new(points.to_vec())?;
    let n = points.len();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((dist(points[i], points[j]), i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    for (d, i, j) in pairs {
        let limit = t * d * (1.0 + GREEDY_REL_TOL);
        if graph.distance_within(i, j, limit)?.is_none() {
            graph.add_edge(i, j)?;
        }
    }
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::max_stretch;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn stretch_one_gives_complete_graph_on_general_points() {
        let pts = vec![pt(0.0, 0.0), pt(1.0, 0.1), pt(0.3, 2.0), pt(-1.0, 0.7)];
        let g = path_greedy_spanner(&pts, 1.0).unwrap();
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn collinear_points_give_a_path() {
        let pts: Vec<Point> = (0..5).map(|i| pt(i as f64, 0.0)).collect();
        for t in [1.0, 1.5, 3.0] {
            let g = path_greedy_spanner(&pts, t).unwrap();
            let edges: Vec<(usize, usize)> = g.edges().map(|(u, v, _)| (u, v)).collect();
            assert_eq!(edges, vec![(0, 1), (1, 2), (2, 3), (3, 4)]);
        }
    }

    #[test]
    fn rejects_stretch_below_one() {
        assert!(matches!(
            path_greedy_spanner(&[pt(0.0, 0.0), pt(1.0, 0.0)], 0.9),
            Err(SpannerError::StretchBelowOne(_))
        ));
    }

    #[test]
    fn output_is_a_t_spanner() {
        let pts: Vec<Point> = (0..40)
            .map(|i| {
                let f = i as f64;
                pt((f * 0.618_033_988_7).fract(), (f * 0.414_213_562_3).fract())
            })
            .collect();
        for t in [1.1, 1.5, 2.0] {
            let g = path_greedy_spanner(&pts, t).unwrap();
            assert!(max_stretch(&g).unwrap().value <= t * (1.0 + 1e-12));
        }
    }
}
