//! Planar link diagrams, the presentation of the fundamental group of
//! their branched double covers, and a decision procedure for
//! left-orderability of that group when the diagram is alternating.

pub mod checkerboard;
pub mod coset;
pub mod diagram;
pub mod error;
pub mod homology;
pub mod orderability;
pub mod pipeline;
pub mod presentation;

pub use checkerboard::{
    build_white_graph, color_faces, crossing_sign, vertex_star, Color, ColorChoice, Coloring, Sign,
    VertexStar, WhiteGraph,
};
pub use coset::{cross_check, enumerate, CosetStatus, CosetTable, CrossCheck};
pub use diagram::{
    build_diagram, check_alternating, parse_pd, split_components, LinkDiagram, PdCode,
};
pub use error::{Error, Result};
pub use homology::{determinant, h1_order, smith_normal_form, IntegerMatrix, SnfResult, H1};
pub use orderability::{
    certify, decide, verdict_report, OrderabilityVerdict, ProofTrace, Reason, Status,
};
pub use pipeline::{analyze, Analysis, Options};
pub use presentation::{
    abelianization_matrix, build_presentation, export_presentation, parse_presentation,
    ExportFormat, GroupPresentation, Word,
};
