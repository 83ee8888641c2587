//! Geometric t-spanners measured under the Hausdorff and Frechet distances.
//!
//! A path between `u` and `v` whose length is at most `t * d(u, v)` stays
//! inside the stretch ellipse of `u` and `v`, which bounds how far it can
//! wander from the segment `uv`. This crate builds spanners (path-greedy and
//! WSPD based), measures the Hausdorff and Frechet deviation of their paths
//! from the straight segment, and generates the Koch-curve graphs that show
//! the converse fails: bounded deviation does not imply bounded stretch.
//!
//! Modules:
//! - [`geometry`]: points, segments, polylines, the stretch ellipse
//! - [`metrics`]: Hausdorff / Frechet distance between a polyline and a segment
//! - [`graph`]: Euclidean graphs, shortest paths, stretch
//! - [`hull`]: incremental convex hulls used by the sweeps
//! - [`spanner`]: greedy spanner, split tree, WSPD, WSPD spanner
//! - [`koch`]: the Koch graphs `F_n` and their level structure
//! - [`verify`]: bound formulas and dilation sweeps
//! - [`pointset`]: seeded point generation and CSV I/O

pub mod geometry;
pub mod graph;
pub mod hull;
pub mod koch;
pub mod metrics;
pub mod pointset;
pub mod spanner;
pub mod verify;

use thiserror::Error;

/// Any error raised by this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Geometry(#[from] geometry::GeometryError),
    #[error(transparent)]
    Metric(#[from] metrics::MetricError),
    #[error(transparent)]
    Graph(#[from] graph::GraphError),
    #[error(transparent)]
    Spanner(#[from] spanner::SpannerError),
    #[error(transparent)]
    Koch(#[from] koch::KochError),
    #[error(transparent)]
    Verify(#[from] verify::VerifyError),
    #[error(transparent)]
    PointSet(#[from] pointset::PointSetError),
}
