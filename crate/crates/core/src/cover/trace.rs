//! Step log of one run of the extension engine.

use serde::{Deserialize, Serialize};

use super::{verify_within, ChordalCover};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    /// `N[P]` is everything; the precover is the cover.
    PathNeighborhood,
    /// Disconnected input handled component by component.
    Components,
    Peel,
    PrecoverCompletion,
    BaseClique,
    BaseChordal,
    BaseHole,
    BasePyramid,
    CliqueCutset,
    UniversalVertex,
    AnchoredStarCutset,
    FullStarCutset,
    StarToClique,
    TwoJoinGlueFirst,
    TwoJoinGlueSecond,
    FallbackOracle,
}

impl StepKind {
    pub fn name(self) -> &'static str {
        match self {
            StepKind::PathNeighborhood => "path-neighborhood",
            StepKind::Components => "components",
            StepKind::Peel => "peel",
            StepKind::PrecoverCompletion => "precover-completion",
            StepKind::BaseClique => "base-clique",
            StepKind::BaseChordal => "base-chordal",
            StepKind::BaseHole => "base-hole",
            StepKind::BasePyramid => "base-pyramid",
            StepKind::CliqueCutset => "clique-cutset",
            StepKind::UniversalVertex => "universal-vertex",
            StepKind::AnchoredStarCutset => "anchored-star-cutset",
            StepKind::FullStarCutset => "full-star-cutset",
            StepKind::StarToClique => "star-to-clique",
            StepKind::TwoJoinGlueFirst => "two-join-glue-first",
            StepKind::TwoJoinGlueSecond => "two-join-glue-second",
            StepKind::FallbackOracle => "fallback-oracle",
        }
    }
}

/// One finished step. `vertices` is the induced subgraph the step solved,
/// `pivot` the structure it used (peeled vertex, cutset, 2-join side, ...)
/// and `x1`/`x2` what it produced: a cover of `vertices`, or for
/// precover completion the completed `W1'`/`W2'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub step: StepKind,
    pub depth: usize,
    pub vertices: VertexSet,
    pub path: Vec<usize>,
    pub pivot: VertexSet,
    pub x1: VertexSet,
    pub x2: VertexSet,
}

/// Steps in completion order, so every step follows the steps it used and
/// the last step is the outermost one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoverTrace {
    pub steps: Vec<TraceStep>,
}

impl CoverTrace {
    pub fn fallback_count(&self) -> usize {
        self.steps.iter().filter(|s| s.step == StepKind::FallbackOracle).count()
    }

    pub fn count(&self, kind: StepKind) -> usize {
        self.steps.iter().filter(|s| s.step == kind).count()
    }

    pub fn to_ndjson(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&serde_json::to_string(s).expect("trace steps serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_ndjson(text: &str) -> Result<Self, serde_json::Error> {
        let steps = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<Result<_, _>>()?;
        Ok(CoverTrace { steps })
    }

    /// Re-checks every recorded cover against `g` and returns the cover of
    /// the outermost step.
    pub fn replay(&self, g: &Graph) -> Result<ChordalCover, String> {
        for (i, s) in self.steps.iter().enumerate() {
            if s.step == StepKind::PrecoverCompletion {
                continue;
            }
            verify_within(g, s.vertices, &ChordalCover::new(s.x1, s.x2), None)
                .map_err(|v| format!("step {i} ({}): {v}", s.step.name()))?;
        }
        let last = self.steps.last().ok_or("empty trace")?;
        if last.depth != 0 {
            return Err("trace does not end at the outermost call".into());
        }
        Ok(ChordalCover::new(last.x1, last.x2))
    }
}
