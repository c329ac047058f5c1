//! Chordal covers: verification, precover completion, gluing across
//! cutsets and 2-joins, and the recursive extension engine.
//!
//! Every set in this module is expressed in the vertex ids of the graph the
//! caller passed in, including sets that live on an induced subgraph during
//! the recursion; nothing is renumbered.

mod engine;
mod glue;
mod precover;
mod trace;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::detect::{hole_in_set, DetectError, Wheel};
use crate::graph::{Graph, GraphError, Hole, InducedPath, VertexSet};

pub use engine::{chordal_cover, chordal_cover_with, extend_cover, extend_cover_with, EngineOptions, ExtendMode};
pub use glue::{glue_across_clique_cutset, glue_across_two_join, GlueOrientation};
pub use precover::{complete_precover, complete_precover_with_order, Completion};
pub use trace::{CoverTrace, StepKind, TraceStep};

/// Path `P` with two chordal sets meeting exactly in `V(P)` inside `N[P]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Precover {
    pub path: InducedPath,
    pub w1: VertexSet,
    pub w2: VertexSet,
    /// Whether `w1 ∪ w2 = N[P]`.
    #[serde(default)]
    pub complete: bool,
}

impl Precover {
    /// Checks the partial-precover invariants and records completeness.
    pub fn new(g: &Graph, path: InducedPath, w1: VertexSet, w2: VertexSet) -> Result<Self, CoverError> {
        let pc = Precover::within(g, g.vertices(), path, w1, w2);
        pc.check_partial(g, g.vertices())?;
        Ok(pc)
    }

    /// Unchecked constructor for a precover on `G[s]`.
    pub(crate) fn within(g: &Graph, s: VertexSet, path: InducedPath, w1: VertexSet, w2: VertexSet) -> Self {
        let complete = (w1 | w2) == g.closed_nbhd(path.vertex_set()) & s;
        Precover { path, w1, w2, complete }
    }

    /// `({v}, N[v], {v})`.
    pub fn at_vertex(g: &Graph, v: usize) -> Result<Self, CoverError> {
        g.check_vertex(v)?;
        Precover::new(g, InducedPath::single(v), g.closed_neighbors(v), VertexSet::singleton(v))
    }

    pub fn path_set(&self) -> VertexSet {
        self.path.vertex_set()
    }

    /// Re-derives the `complete` flag against `g`.
    pub fn refresh(mut self, g: &Graph) -> Self {
        self.complete = (self.w1 | self.w2) == g.closed_nbhd(self.path_set());
        self
    }

    pub(crate) fn check_partial(&self, g: &Graph, s: VertexSet) -> Result<(), CoverError> {
        g.check_set(self.w1 | self.w2)?;
        self.path.validate(g)?;
        let p = self.path_set();
        if !p.is_subset(s) || !(self.w1 | self.w2).is_subset(s) {
            return Err(CoverError::Precondition("precover leaves the graph".into()));
        }
        if self.w1 & self.w2 != p {
            return Err(CoverError::Precondition(format!(
                "w1 ∩ w2 = {} but the path is {}",
                self.w1 & self.w2,
                p
            )));
        }
        let np = g.closed_nbhd(p) & s;
        if !(self.w1 | self.w2).is_subset(np) {
            return Err(CoverError::Precondition(format!(
                "{} lies outside N[P]",
                (self.w1 | self.w2) - np
            )));
        }
        for (side, w) in [(1, self.w1), (2, self.w2)] {
            if let Some(h) = hole_in_set(g, w) {
                return Err(CoverError::Precondition(format!("w{side} contains the hole {h}")));
            }
        }
        Ok(())
    }
}

/// Two sets covering the vertices, each inducing a chordal graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChordalCover {
    pub x1: VertexSet,
    pub x2: VertexSet,
}

impl ChordalCover {
    pub fn new(x1: VertexSet, x2: VertexSet) -> Self {
        ChordalCover { x1, x2 }
    }

    pub fn side(&self, i: usize) -> VertexSet {
        if i == 1 {
            self.x1
        } else {
            self.x2
        }
    }

    pub fn union(&self, other: &ChordalCover) -> ChordalCover {
        ChordalCover { x1: self.x1 | other.x1, x2: self.x2 | other.x2 }
    }

    pub fn restrict(&self, s: VertexSet) -> ChordalCover {
        ChordalCover { x1: self.x1 & s, x2: self.x2 & s }
    }
}

/// First clause of the cover definition that fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum Violation {
    OutOfRange { vertices: VertexSet },
    Coverage { missing: VertexSet },
    NotChordal { side: usize, hole: Hole },
    Containment { side: usize, missing: VertexSet },
    Overlap { expected: VertexSet, actual: VertexSet },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutOfRange { vertices } => write!(f, "vertices {vertices} are not in the graph"),
            Violation::Coverage { missing } => write!(f, "x1 ∪ x2 misses {missing}"),
            Violation::NotChordal { side, hole } => write!(f, "x{side} contains the hole {hole}"),
            Violation::Containment { side, missing } => write!(f, "w{side} ⊄ x{side}: {missing} missing"),
            Violation::Overlap { expected, actual } => write!(f, "x1 ∩ x2 = {actual}, expected {expected}"),
        }
    }
}

/// Checks `c` against `g` and, when given, the containment clauses of `p`.
pub fn verify_cover(g: &Graph, c: &ChordalCover, p: Option<&Precover>) -> Result<(), Violation> {
    verify_within(g, g.vertices(), c, p)
}

pub(crate) fn verify_within(g: &Graph, s: VertexSet, c: &ChordalCover, p: Option<&Precover>) -> Result<(), Violation> {
    let stray = (c.x1 | c.x2) - s;
    if !stray.is_empty() {
        return Err(Violation::OutOfRange { vertices: stray });
    }
    let missing = s - (c.x1 | c.x2);
    if !missing.is_empty() {
        return Err(Violation::Coverage { missing });
    }
    for (side, x) in [(1, c.x1), (2, c.x2)] {
        if let Some(hole) = hole_in_set(g, x) {
            return Err(Violation::NotChordal { side, hole });
        }
    }
    if let Some(p) = p {
        for (side, w, x) in [(1, p.w1, c.x1), (2, p.w2, c.x2)] {
            if !w.is_subset(x) {
                return Err(Violation::Containment { side, missing: w - x });
            }
        }
        let expected = p.path_set();
        let actual = c.x1 & c.x2;
        if actual != expected {
            return Err(Violation::Overlap { expected, actual });
        }
    }
    Ok(())
}

/// Why a graph is outside the class the engine handles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "witness", rename_all = "snake_case")]
pub enum ClassWitness {
    EvenHole(Hole),
    SectorWheel(Wheel),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("graph is outside the class: {0:?}")]
    ClassViolation(ClassWitness),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("vertex {vertex} has {count} neighbours across the path")]
    OppositeNeighbors { vertex: usize, count: usize },
    #[error("no construction applies on {0}")]
    NoConstruction(VertexSet),
    #[error("no extension exists on {0} (checked exhaustively)")]
    FallbackExhausted(VertexSet),
    #[error("gluing failed: {0}")]
    GlueFailed(String),
    #[error(transparent)]
    Detect(#[from] DetectError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::figure1;

    #[test]
    fn c5_two_paths_verify() {
        let g = Graph::cycle(5).unwrap();
        let c = ChordalCover::new(VertexSet::from_iter([0, 1, 2, 3]), VertexSet::from_iter([3, 4, 0]));
        assert_eq!(verify_cover(&g, &c, None), Ok(()));
    }

    #[test]
    fn whole_c5_is_not_chordal() {
        let g = Graph::cycle(5).unwrap();
        let c = ChordalCover::new(g.vertices(), VertexSet::EMPTY);
        assert!(matches!(verify_cover(&g, &c, None), Err(Violation::NotChordal { side: 1, .. })));
    }

    #[test]
    fn figure1_sets_never_extend() {
        let g = figure1();
        let w1 = VertexSet::from_iter([0, 1, 3, 5]);
        let w2 = VertexSet::from_iter([0, 2, 4, 6]);
        let pc = Precover::new(&g, InducedPath::single(0), w1, w2).unwrap();
        assert!(pc.complete);
        // z1..z3 (ids 7..9) are the only free vertices.
        for mask in 0u64..8 {
            let z1 = VertexSet::from_bits(mask << 7);
            let z2 = VertexSet::from_bits(0b111 << 7) - z1;
            let c = ChordalCover::new(w1 | z1, w2 | z2);
            assert!(verify_cover(&g, &c, Some(&pc)).is_err());
        }
    }

    #[test]
    fn containment_and_overlap_clauses() {
        let g = Graph::cycle(5).unwrap();
        let pc = Precover::new(&g, InducedPath::single(0), VertexSet::from_iter([0, 1, 4]), VertexSet::singleton(0))
            .unwrap();
        let c = ChordalCover::new(VertexSet::from_iter([0, 1, 2]), VertexSet::from_iter([0, 2, 3, 4]));
        assert!(matches!(verify_cover(&g, &c, Some(&pc)), Err(Violation::Containment { side: 1, .. })));
        let c = ChordalCover::new(VertexSet::from_iter([0, 1, 2, 4]), VertexSet::from_iter([0, 2, 3]));
        assert!(matches!(verify_cover(&g, &c, Some(&pc)), Err(Violation::Overlap { .. })));
    }

    #[test]
    fn precover_rejects_bad_sets() {
        let g = Graph::cycle(5).unwrap();
        let p = InducedPath::single(0);
        assert!(Precover::new(&g, p.clone(), VertexSet::from_iter([0, 2]), VertexSet::singleton(0)).is_err());
        assert!(Precover::new(&g, p.clone(), VertexSet::from_iter([0, 1]), VertexSet::from_iter([0, 1])).is_err());
        let partial = Precover::new(&g, p, VertexSet::from_iter([0, 1]), VertexSet::singleton(0)).unwrap();
        assert!(!partial.complete);
    }
}
