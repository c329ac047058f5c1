//! Structure detectors. Every returned witness can be re-checked with its
//! `validate` method.

pub mod basic;
pub mod chordal;
pub mod cutset;
pub mod decompose;
pub mod twojoin;
pub mod wheel;

use thiserror::Error;

use crate::graph::GraphError;

pub use basic::{is_nearly_simplicial, is_pyramid, nearly_simplicial_vertices, recognize_basic, BasicRealization, PyramidWitness};
pub use chordal::{
    all_holes, chordal_witness, find_hole, for_each_hole, for_each_induced_path, hole_in_set, is_chordal,
    is_chordal_set, is_even_hole_free, Parity,
};
pub use cutset::{
    anchored_candidates, anchored_cutset, clique_cutset, clique_cutsets, find_cutset, has_star_cutset,
    is_star_center, maximal_cliques, Cutset, CutsetKind,
};
pub use decompose::{decompose, whole_graph_hole, DecompositionOutcome};
pub use twojoin::{all_two_joins, find_two_join, marker_path, two_join_from_side, TwoJoin, TWO_JOIN_LIMIT};
pub use wheel::{
    classify_wheel, find_wheel, for_each_wheel, is_sector_wheel_free, proper_wheel_cutset, sectors,
    SectorCutsetWitness, Wheel, WheelFlags, WheelKind,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetectError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has {n} vertices; this search is limited to {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no decomposition case applies")]
    NoCaseApplies,
    #[error("separation check failed: {0}")]
    SeparationFailed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
