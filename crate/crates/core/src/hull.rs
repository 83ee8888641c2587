//! Convex hulls of growing point sets.
//!
//! The maximum of a convex function over a finite point set is attained at a
//! vertex of the set's convex hull. The dilation sweeps evaluate the distance
//! to a segment (convex) over every prefix of a path, so keeping the hull of
//! the prefix turns an O(path length) scan into an O(hull size) one.

use crate::geometry::Point;

/// Convex hull with vertices in counter-clockwise order, collinear points dropped.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConvexHull {
    vertices: Vec<Point>,
}

impl ConvexHull {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_points(points: &[Point]) -> Self {
        Self {
            vertices: monotone_chain(points.to_vec()),
        }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// True if `p` is inside the hull or on its boundary.
    pub fn contains(&self, p: Point) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => self.vertices[0] == p,
            2 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                (b - a).cross(p - a) == 0.0
                    && (p - a).dot(b - a) >= 0.0
                    && (p - b).dot(a - b) >= 0.0
            }
            n => (0..n).all(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % n];
                (b - a).cross(p - a) >= 0.0
            }),
        }
    }

    pub fn insert(&mut self, p: Point) {
        if self.contains(p) || self.splice(p) {
            return;
        }
        let mut points = std::mem::take(&mut self.vertices);
        points.push(p);
        self.vertices = monotone_chain(points);
    }

    /// Replaces the chain of edges visible from an outside point `p` by `p`
    /// in linear time. Returns false, leaving the hull untouched, when the
    /// visible edges are not a single chain or the result would have
    /// collinear vertices; the caller then rebuilds from scratch.
    fn splice(&mut self, p: Point) -> bool {
        let n = self.vertices.len();
        if n < 3 {
            return false;
        }
        let v = &self.vertices;
        let visible: Vec<bool> = (0..n)
            .map(|i| (v[(i + 1) % n] - v[i]).cross(p - v[i]) < 0.0)
            .collect();
        // first visible edge whose predecessor is hidden
        let Some(first) = (0..n).find(|&i| visible[i] && !visible[(i + n - 1) % n]) else {
            return false;
        };
        let count = (0..n).take_while(|&k| visible[(first + k) % n]).count();
        if visible.iter().filter(|&&x| x).count() != count {
            return false;
        }
        // chain runs from vertex `first` to vertex `first + count`; both stay
        let start = first;
        let end = (first + count) % n;
        let prev = v[(start + n - 1) % n];
        let next = v[(end + 1) % n];
        if (v[start] - prev).cross(p - v[start]) <= 0.0 || (p - v[end]).cross(next - v[end]) >= 0.0 {
            return false;
        }
        let mut out = Vec::with_capacity(n + 1 - (count - 1));
        let mut i = end;
        loop {
            out.push(v[i]);
            if i == start {
                break;
            }
            i = (i + 1) % n;
        }
        out.push(p);
        self.vertices = out;
        true
    }

    /// Returns a new hull with `p` added.
    pub fn with(&self, p: Point) -> Self {
        let mut next = self.clone();
        next.insert(p);
        next
    }

    /// Maximum of `f` over the hull vertices together with the maximizing vertex.
    pub fn max_by(&self, f: impl Fn(Point) -> f64) -> Option<(f64, Point)> {
        self.vertices
            .iter()
            .map(|&p| (f(p), p))
            .fold(None, |best, (value, p)| match best {
                Some((b, _)) if b >= value => best,
                _ => Some((value, p)),
            })
    }
}

fn monotone_chain(mut points: Vec<Point>) -> Vec<Point> {
    points.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    points.dedup();
    if points.len() < 3 {
        return points;
    }
    let turn = |o: Point, a: Point, b: Point| (a - o).cross(b - o);
    let mut hull: Vec<Point> = Vec::with_capacity(2 * points.len());
    for &p in &points {
        while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in points.iter().rev().skip(1) {
        while hull.len() >= lower && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{point_segment_distance, Segment};
    use proptest::prelude::*;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn square_with_interior_and_collinear_points() {
        let hull = ConvexHull::from_points(&[
            pt(0.0, 0.0),
            pt(1.0, 0.0),
            pt(0.5, 0.0),
            pt(1.0, 1.0),
            pt(0.0, 1.0),
            pt(0.5, 0.5),
        ]);
        assert_eq!(hull.len(), 4);
        assert!(hull.contains(pt(0.5, 0.0)));
        assert!(hull.contains(pt(0.2, 0.7)));
        assert!(!hull.contains(pt(1.5, 0.5)));
    }

    #[test]
    fn degenerate_hulls() {
        let mut hull = ConvexHull::new();
        hull.insert(pt(0.0, 0.0));
        assert_eq!(hull.len(), 1);
        hull.insert(pt(2.0, 0.0));
        hull.insert(pt(1.0, 0.0));
        assert_eq!(hull.len(), 2);
        assert!(hull.contains(pt(1.0, 0.0)));
        hull.insert(pt(3.0, 0.0));
        assert_eq!(hull.vertices(), &[pt(0.0, 0.0), pt(3.0, 0.0)]);
        hull.insert(pt(1.0, 1.0));
        assert_eq!(hull.len(), 3);
    }

    fn canonical(h: &ConvexHull) -> Vec<(u64, u64)> {
        let mut v: Vec<(u64, u64)> = h.vertices().iter().map(|p| (p.x.to_bits(), p.y.to_bits())).collect();
        v.sort();
        v
    }

    #[test]
    fn splice_keeps_counter_clockwise_order() {
        let mut hull = ConvexHull::from_points(&[pt(0.0, 0.0), pt(2.0, 0.0), pt(2.0, 2.0), pt(0.0, 2.0)]);
        hull.insert(pt(3.0, 1.0));
        assert_eq!(hull.len(), 5);
        let v = hull.vertices();
        for i in 0..v.len() {
            let (a, b, c) = (v[i], v[(i + 1) % v.len()], v[(i + 2) % v.len()]);
            assert!((b - a).cross(c - b) > 0.0);
        }
    }

    proptest! {
        #[test]
        fn incremental_hull_matches_batch_hull(
            coords in prop::collection::vec((-10i32..10, -10i32..10), 1..60),
        ) {
            let points: Vec<Point> = coords.iter().map(|&(x, y)| pt(x as f64, y as f64)).collect();
            let mut hull = ConvexHull::new();
            for (k, &p) in points.iter().enumerate() {
                hull.insert(p);
                prop_assert_eq!(canonical(&hull), canonical(&ConvexHull::from_points(&points[..=k])));
            }
        }

        #[test]
        fn incremental_max_matches_brute_force(
            coords in prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), 1..40),
            sx in -5.0..5.0f64, sy in -5.0..5.0f64,
        ) {
            let points: Vec<Point> = coords.iter().map(|&(x, y)| pt(x, y)).collect();
            let s = Segment::new(pt(0.0, 0.0), pt(sx, sy));
            let mut hull = ConvexHull::new();
            for (k, &p) in points.iter().enumerate() {
                hull.insert(p);
                let brute = points[..=k]
                    .iter()
                    .map(|&q| point_segment_distance(q, &s))
                    .fold(0.0f64, f64::max);
                let (fast, _) = hull.max_by(|q| point_segment_distance(q, &s)).unwrap();
                prop_assert!((brute - fast).abs() <= 1e-9, "brute {} fast {}", brute, fast);
            }
        }
    }
}
