//! Chordal covers of even-hole-free graphs: structure detectors, a
//! constructive cover engine, and an exhaustive oracle for small graphs.

pub mod corpus;
pub mod cover;
pub mod detect;
pub mod graph;
pub mod oracle;
pub mod sweep;

pub use cover::{chordal_cover, extend_cover, verify_cover, ChordalCover, CoverError, CoverTrace, Precover};
pub use graph::{is_flat_path, GraphError, Graph, Hole, InducedPath, VertexSet};
