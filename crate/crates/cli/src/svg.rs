//! SVG figures of planar graphs.

use std::fmt::Write;

use spanner_core::geometry::Point;
use spanner_core::graph::GeoGraph;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 20.0;
const LEVEL_COLORS: [&str; 9] = [
    "#000000", "#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

pub struct Figure<'a> {
    pub graph: &'a GeoGraph,
    /// Colors vertices by level when present.
    pub levels: Option<&'a [u32]>,
    pub title: String,
}

/// Maps the bounding box of the points to the canvas, y up.
struct Frame {
    min: Point,
    scale: f64,
    height: f64,
}

impl Frame {
    fn fit(points: &[Point]) -> Self {
        let (mut lo, mut hi) = (points[0], points[0]);
        for p in points {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(f64::MIN_POSITIVE);
        let scale = (SIZE - 2.0 * MARGIN) / span;
        Self {
            min: lo,
            scale,
            height: (hi.y - lo.y) * scale + 2.0 * MARGIN,
        }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        (
            MARGIN + (p.x - self.min.x) * self.scale,
            self.height - MARGIN - (p.y - self.min.y) * self.scale,
        )
    }
}

pub fn render(fig: &Figure) -> String {
    let pts = fig.graph.vertices();
    let mut out = String::new();
    if pts.is_empty() {
        return out;
    }
    let frame = Frame::fit(pts);
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(out, "<!-- spanner {} -->", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{h:.2}" viewBox="0 0 {SIZE} {h:.2}">"#,
        h = frame.height
    );
    let _ = writeln!(out, "<title>{}</title>", fig.title);
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<g stroke="black" stroke-width="1" fill="none" stroke-linecap="round">"#);
    for (u, v, _) in fig.graph.edges() {
        let (x1, y1) = frame.map(pts[u]);
        let (x2, y2) = frame.map(pts[v]);
        let _ = writeln!(out, r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#);
    }
    let _ = writeln!(out, "</g>");
    if let Some(levels) = fig.levels {
        let _ = writeln!(out, r#"<g stroke="none">"#);
        for (p, &l) in pts.iter().zip(levels) {
            let (x, y) = frame.map(*p);
            let color = LEVEL_COLORS[(l as usize).min(LEVEL_COLORS.len() - 1)];
            let r = 4.0 / (1.0 + l as f64 * 0.5);
            let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{r:.2}" fill="{color}"/>"#);
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</svg>");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use spanner_core::koch::koch_graph;

    #[test]
    fn one_bump() {
        let k = koch_graph(1).unwrap();
        let svg = render(&Figure {
            graph: k.graph(),
            levels: Some(k.levels()),
            title: "F_1".into(),
        });
        assert_eq!(svg.matches("<line ").count(), 4);
        assert_eq!(svg.matches("<circle ").count(), 5);
        // the apex is drawn above the base line
        assert!(svg.contains(r#"<line x1="20.000" y1="239.393" x2="273.333" y2="239.393"/>"#), "{svg}");
        assert!(svg.contains(r#"y2="20.000""#));
    }
}
