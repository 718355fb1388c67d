//! Discrete Ricci curvatures on weighted networks, and the machinery built
//! on top of them: curvature-driven sampling, normalized Ricci flow, kernel
//! construction with MDS embedding, epsilon-net discretization of metric
//! point sets, and curvature analysis of image grids.

pub mod complex;
pub mod curvature;
pub mod error;
pub mod graph;
pub mod metrics;

pub use complex::{build_complex, CellComplex2, ComplexOptions, Face, FaceId, FaceWeightRule};
pub use curvature::{CurvatureField, CurvatureKind, FieldTarget, HaantjesConvention};
pub use error::{Error, Result};
pub use graph::{Edge, EdgeId, GraphBuilder, NodeId, WeightedGraph};
pub use metrics::MetricKind;
