//! Planar primitives: points, segments, polylines and the stretch ellipse.
//!
//! Every `t`-path between `u` and `v` lies inside the ellipse with foci `u`
//! and `v` whose string length is `t * d(u, v)`. The ellipse is the basic
//! geometric fact behind the Hausdorff and Frechet bounds in [`crate::verify`].

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default relative tolerance for floating-point comparisons.
pub const DEFAULT_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("non-finite coordinate ({x}, {y})")]
    NonFinite { x: f64, y: f64 },
    #[error("stretch factor must be >= 1, got {0}")]
    StretchBelowOne(f64),
    #[error("a polyline needs at least one vertex")]
    EmptyPolyline,
}

/// A point in the Euclidean plane. Coordinates are always finite.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    /// Panics on NaN or infinite input; use [`Point::try_new`] for untrusted data.
    pub fn new(x: f64, y: f64) -> Self {
        Self::try_new(x, y).expect("finite coordinates")
    }

    pub fn try_new(x: f64, y: f64) -> Result<Self, GeometryError> {
        if x.is_finite() && y.is_finite() {
            Ok(Self { x, y })
        } else {
            Err(GeometryError::NonFinite { x, y })
        }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 2D cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        Point {
            x: self.x + (other.x - self.x) * t,
            y: self.y + (other.y - self.y) * t,
        }
    }

    /// Counter-clockwise rotation about the origin.
    pub fn rotate(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point {
            x: c * self.x - s * self.y,
            y: s * self.x + c * self.y,
        }
    }

    /// The vector rotated by +90 degrees.
    pub fn perp(self) -> Point {
        Point {
            x: -self.y,
            y: self.x,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl TryFrom<[f64; 2]> for Point {
    type Error = GeometryError;

    fn try_from([x, y]: [f64; 2]) -> Result<Self, Self::Error> {
        Point::try_new(x, y)
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point {
            x: self.x + rhs.x,
            y: self.y + rhs.y,
        }
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point {
            x: self.x - rhs.x,
            y: self.y - rhs.y,
        }
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point {
            x: self.x * rhs,
            y: self.y * rhs,
        }
    }
}

/// Euclidean distance.
pub fn dist(p: Point, q: Point) -> f64 {
    (p - q).norm()
}

/// A closed segment. `a == b` is allowed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Self { a, b }
    }

    pub fn length(&self) -> f64 {
        dist(self.a, self.b)
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    pub fn at(&self, t: f64) -> Point {
        self.a.lerp(self.b, t)
    }

    /// Parameter in `[0, 1]` of the point of the segment closest to `p`.
    pub fn closest_param(&self, p: Point) -> f64 {
        let d = self.b - self.a;
        let len2 = d.dot(d);
        if len2 == 0.0 {
            return 0.0;
        }
        ((p - self.a).dot(d) / len2).clamp(0.0, 1.0)
    }

    pub fn closest_point(&self, p: Point) -> Point {
        self.at(self.closest_param(p))
    }
}

/// Distance from `p` to the closest point of `s`.
pub fn point_segment_distance(p: Point, s: &Segment) -> f64 {
    dist(p, s.closest_point(p))
}

/// An ordered, non-empty sequence of vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct Polyline {
    vertices: Vec<Point>,
}

impl Polyline {
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeometryError> {
        if vertices.is_empty() {
            return Err(GeometryError::EmptyPolyline);
        }
        Ok(Self { vertices })
    }

    /// Like [`Polyline::new`] but drops consecutive duplicate vertices.
    pub fn new_normalized(mut vertices: Vec<Point>) -> Result<Self, GeometryError> {
        vertices.dedup();
        Self::new(vertices)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.vertices
    }

    pub fn first(&self) -> Point {
        self.vertices[0]
    }

    pub fn last(&self) -> Point {
        self.vertices[self.vertices.len() - 1]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        self.vertices.windows(2).map(|w| Segment::new(w[0], w[1]))
    }

    pub fn length(&self) -> f64 {
        self.vertices.windows(2).map(|w| dist(w[0], w[1])).sum()
    }

    /// Distance from `p` to the nearest point of the polyline.
    pub fn distance_to(&self, p: Point) -> f64 {
        if self.vertices.len() == 1 {
            return dist(p, self.vertices[0]);
        }
        self.edges()
            .map(|e| point_segment_distance(p, &e))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn reversed(&self) -> Polyline {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Polyline { vertices }
    }

    /// Applies `f` to every vertex.
    pub fn map(&self, f: impl Fn(Point) -> Point) -> Polyline {
        Polyline {
            vertices: self.vertices.iter().map(|&p| f(p)).collect(),
        }
    }
}

impl TryFrom<Vec<Point>> for Polyline {
    type Error = GeometryError;

    fn try_from(vertices: Vec<Point>) -> Result<Self, Self::Error> {
        Polyline::new(vertices)
    }
}

impl From<Polyline> for Vec<Point> {
    fn from(p: Polyline) -> Self {
        p.vertices
    }
}

impl From<Segment> for Polyline {
    fn from(s: Segment) -> Self {
        Polyline {
            vertices: vec![s.a, s.b],
        }
    }
}

/// Ellipse with foci `u`, `v` and string length `t * d(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StretchEllipse {
    pub u: Point,
    pub v: Point,
    pub t: f64,
}

impl StretchEllipse {
    pub fn new(u: Point, v: Point, t: f64) -> Result<Self, GeometryError> {
        if !(t >= 1.0) {
            return Err(GeometryError::StretchBelowOne(t));
        }
        Ok(Self { u, v, t })
    }

    pub fn focal_distance(&self) -> f64 {
        dist(self.u, self.v)
    }

    pub fn semi_major(&self) -> f64 {
        self.t * self.focal_distance() / 2.0
    }

    pub fn semi_minor(&self) -> f64 {
        self.focal_distance() * (self.t * self.t - 1.0).sqrt() / 2.0
    }

    pub fn contains(&self, p: Point) -> bool {
        self.contains_with_tol(p, DEFAULT_REL_TOL)
    }

    /// `rel_tol` is relative to the string length `t * d(u, v)`.
    pub fn contains_with_tol(&self, p: Point, rel_tol: f64) -> bool {
        let string = self.t * self.focal_distance();
        dist(p, self.u) + dist(p, self.v) <= string + rel_tol * string
    }

    /// Boundary point at eccentric anomaly `theta`.
    pub fn boundary_point(&self, theta: f64) -> Point {
        let center = self.u.lerp(self.v, 0.5);
        let d = self.focal_distance();
        let axis = if d > 0.0 {
            (self.v - self.u) * (1.0 / d)
        } else {
            Point { x: 1.0, y: 0.0 }
        };
        let (s, c) = theta.sin_cos();
        center + axis * (self.semi_major() * c) + axis.perp() * (self.semi_minor() * s)
    }
}

/// Convenience wrapper for [`StretchEllipse::contains`].
pub fn ellipse_contains(e: &StretchEllipse, p: Point) -> bool {
    e.contains(p)
}

/// Largest distance from segment `uv` of any point inside the stretch ellipse:
/// `d(u, v) * sqrt(t^2 - 1) / 2`.
pub fn ellipse_max_height(u: Point, v: Point, t: f64) -> Result<f64, GeometryError> {
    Ok(StretchEllipse::new(u, v, t)?.semi_minor())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn dist_examples() {
        assert_eq!(dist(pt(0.0, 0.0), pt(0.0, 0.0)), 0.0);
        assert_eq!(dist(pt(0.0, 0.0), pt(1.0, 0.0)), 1.0);
        assert_eq!(dist(pt(0.0, 0.0), pt(3.0, 4.0)), 5.0);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(Point::try_new(f64::NAN, 0.0).is_err());
        assert!(Point::try_new(0.0, f64::INFINITY).is_err());
        assert!(serde_json::from_str::<Point>("[1.0, 2.0]").is_ok());
    }

    #[test]
    fn point_segment_examples() {
        let s = Segment::new(pt(0.0, 0.0), pt(1.0, 0.0));
        assert_eq!(point_segment_distance(pt(0.5, 1.0), &s), 1.0);
        assert_eq!(point_segment_distance(pt(2.0, 0.0), &s), 1.0);
        let degenerate = Segment::new(pt(0.0, 0.0), pt(0.0, 0.0));
        assert_eq!(point_segment_distance(pt(0.0, 1.0), &degenerate), 1.0);
    }

    #[test]
    fn ellipse_examples() {
        let u = pt(0.0, 0.0);
        let v = pt(1.0, 0.0);
        let e = StretchEllipse::new(u, v, 2.0).unwrap();
        assert!(ellipse_contains(&e, pt(0.5, 3f64.sqrt() / 2.0)));
        assert!(!ellipse_contains(&e, pt(0.5, 1.0)));
        assert!(ellipse_contains(&e, u));
    }

    #[test]
    fn ellipse_height_examples() {
        let o = pt(0.0, 0.0);
        assert_eq!(ellipse_max_height(o, pt(1.0, 0.0), 1.0).unwrap(), 0.0);
        assert!((ellipse_max_height(o, pt(1.0, 0.0), 5f64.sqrt()).unwrap() - 1.0).abs() < 1e-15);
        assert!((ellipse_max_height(o, pt(2.0, 0.0), 2.0).unwrap() - 3f64.sqrt()).abs() < 1e-15);
        assert!(matches!(
            ellipse_max_height(o, pt(1.0, 0.0), 0.9),
            Err(GeometryError::StretchBelowOne(_))
        ));
    }

    #[test]
    fn polyline_needs_a_vertex() {
        assert_eq!(Polyline::new(vec![]), Err(GeometryError::EmptyPolyline));
        let p = Polyline::new_normalized(vec![pt(0.0, 0.0), pt(0.0, 0.0), pt(1.0, 0.0)]).unwrap();
        assert_eq!(p.len(), 2);
    }

    fn coord() -> impl Strategy<Value = f64> {
        -100.0..100.0f64
    }

    proptest! {
        #[test]
        fn boundary_points_sum_to_string_length(
            ux in coord(), uy in coord(), vx in coord(), vy in coord(),
            t in 1.0..10.0f64, theta in 0.0..std::f64::consts::TAU,
        ) {
            let e = StretchEllipse::new(pt(ux, uy), pt(vx, vy), t).unwrap();
            let p = e.boundary_point(theta);
            let d = e.focal_distance();
            let sum = dist(p, e.u) + dist(p, e.v);
            prop_assert!((sum - t * d).abs() <= 1e-9 * d.max(1e-300) + 1e-12 * t * d);
        }

        #[test]
        fn segment_distance_bounded_by_endpoints(
            px in coord(), py in coord(), ax in coord(), ay in coord(), bx in coord(), by in coord(),
        ) {
            let s = Segment::new(pt(ax, ay), pt(bx, by));
            let p = pt(px, py);
            let d = point_segment_distance(p, &s);
            let end = dist(p, s.a).min(dist(p, s.b));
            prop_assert!(d <= end + 1e-12 * end.max(1.0));
            let t = s.closest_param(p);
            if t == 0.0 || t == 1.0 {
                prop_assert!((d - end).abs() <= 1e-12 * end.max(1.0));
            }
        }

        #[test]
        fn ellipse_contains_monotone_in_t(
            px in -3.0..3.0f64, py in -3.0..3.0f64, t in 1.0..4.0f64, dt in 0.0..4.0f64,
        ) {
            let u = pt(0.0, 0.0);
            let v = pt(1.0, 0.0);
            let p = pt(px, py);
            let e = StretchEllipse::new(u, v, t).unwrap();
            let wider = StretchEllipse::new(u, v, t + dt).unwrap();
            if e.contains(p) {
                prop_assert!(wider.contains(p));
            }
        }

        #[test]
        fn dist_is_a_metric(
            ax in coord(), ay in coord(), bx in coord(), by in coord(), cx in coord(), cy in coord(),
        ) {
            let (a, b, c) = (pt(ax, ay), pt(bx, by), pt(cx, cy));
            prop_assert_eq!(dist(a, b), dist(b, a));
            prop_assert!(dist(a, c) <= dist(a, b) + dist(b, c) + 1e-12);
        }
    }
}
