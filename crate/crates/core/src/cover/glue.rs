//! Combining covers of the pieces of a clique cutset or the blocks of a
//! 2-join into a cover of the whole graph.

use serde::{Deserialize, Serialize};

use super::engine::extend_within;
use super::precover::complete_within;
use super::{verify_within, ChordalCover, CoverError, Precover};
use crate::detect::{Cutset, CutsetKind, TwoJoin};
use crate::graph::{Graph, InducedPath, VertexSet};

/// Which block carries the other side's marker path in both of its sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GlueOrientation {
    /// `M2 ⊆ X1' ∩ X2'` in the cover of `B(Z1)`, and the ends of `M1` keep
    /// their sides in the cover of `B(Z2)`.
    MarkerInFirst,
    /// `M1 ⊆ X1'' ∩ X2''` in the cover of `B(Z2)`, and the ends of `M2` keep
    /// their sides in the cover of `B(Z1)`.
    MarkerInSecond,
}

/// `X_i = (X_i' ∩ Z1) ∪ (X_i'' ∩ Z2)` where `first` covers `B(Z1)` and
/// `second` covers `B(Z2)`, after checking the orientation's hypotheses.
pub fn glue_across_two_join(
    g: &Graph,
    tj: &TwoJoin,
    first: &ChordalCover,
    second: &ChordalCover,
    orientation: GlueOrientation,
) -> Result<ChordalCover, CoverError> {
    tj.validate(g).map_err(CoverError::Precondition)?;
    glue_two_join_within(g, g.vertices(), tj, first, second, orientation)
}

/// As [`glue_across_two_join`] for a 2-join of `G[s]`, which the caller
/// vouches for.
pub(crate) fn glue_two_join_within(
    g: &Graph,
    s: VertexSet,
    tj: &TwoJoin,
    first: &ChordalCover,
    second: &ChordalCover,
    orientation: GlueOrientation,
) -> Result<ChordalCover, CoverError> {
    let (b1, b2) = (tj.block(1), tj.block(2));
    verify_within(g, b1, first, None).map_err(|v| CoverError::Precondition(format!("first block cover: {v}")))?;
    verify_within(g, b2, second, None).map_err(|v| CoverError::Precondition(format!("second block cover: {v}")))?;
    let (marker_cover, marker, ends_from, ends_to, ends) = match orientation {
        GlueOrientation::MarkerInFirst => {
            (first, tj.m2.vertex_set(), first, second, ends_of(&tj.m1))
        }
        GlueOrientation::MarkerInSecond => {
            (second, tj.m1.vertex_set(), second, first, ends_of(&tj.m2))
        }
    };
    if !marker.is_subset(marker_cover.x1 & marker_cover.x2) {
        return Err(CoverError::Precondition(format!(
            "marker path {} is not in both sides of its block cover",
            marker
        )));
    }
    for i in [1, 2] {
        let moved = ends & ends_from.side(i);
        if !moved.is_subset(ends_to.side(i)) {
            return Err(CoverError::Precondition(format!(
                "marker ends {} change side x{i} between the block covers",
                moved - ends_to.side(i)
            )));
        }
    }
    let (z1, z2) = (tj.z1(), tj.z2());
    let glued = ChordalCover::new((first.x1 & z1) | (second.x1 & z2), (first.x2 & z1) | (second.x2 & z2));
    verify_within(g, s, &glued, None).map_err(|v| CoverError::GlueFailed(v.to_string()))?;
    Ok(glued)
}

fn ends_of(p: &InducedPath) -> VertexSet {
    VertexSet::singleton(p.first()).with(p.last())
}

/// Unions per-piece covers across the clique cutset `q`. `pieces[i]` covers
/// `C_i ∪ Q` for the `i`-th component `C_i` of `G \ Q` (components ordered by
/// smallest vertex). Pieces that split `Q` differently from the first piece
/// are re-solved from a one-vertex (or one-edge) precover inside `Q` that
/// copies the first piece's split; this needs the class assumptions.
pub fn glue_across_clique_cutset(g: &Graph, q: &Cutset, pieces: &[ChordalCover]) -> Result<ChordalCover, CoverError> {
    if q.kind != CutsetKind::Clique {
        return Err(CoverError::Precondition("cutset is not a clique cutset".into()));
    }
    q.validate(g).map_err(CoverError::Precondition)?;
    let qs = q.verts;
    let comps = g.components_within(g.vertices() - qs);
    if comps.len() != pieces.len() {
        return Err(CoverError::Precondition(format!(
            "{} components but {} piece covers",
            comps.len(),
            pieces.len()
        )));
    }
    for (c, piece) in comps.iter().zip(pieces) {
        verify_within(g, *c | qs, piece, None)
            .map_err(|v| CoverError::Precondition(format!("piece {}: {v}", *c | qs)))?;
    }
    let reference = pieces[0].restrict(qs);
    let mut glued = pieces[0];
    for (c, piece) in comps.iter().zip(pieces).skip(1) {
        let fitted = if piece.restrict(qs) == reference {
            *piece
        } else {
            refit_piece(g, *c | qs, qs, *c, &reference)?
        };
        glued = glued.union(&fitted);
    }
    verify_within(g, g.vertices(), &glued, None).map_err(|v| CoverError::GlueFailed(v.to_string()))?;
    Ok(glued)
}

/// A cover of `piece = c ∪ q` whose trace on `q` equals `reference`.
fn refit_piece(
    g: &Graph,
    piece: VertexSet,
    q: VertexSet,
    c: VertexSet,
    reference: &ChordalCover,
) -> Result<ChordalCover, CoverError> {
    let shared = reference.x1 & reference.x2;
    let (path, dropped) = match shared.len() {
        0 => {
            let v = q.first().expect("clique cutsets are non-empty");
            (InducedPath::single(v), Some(v))
        }
        1 | 2 => (InducedPath::new(g, shared.to_vec())?, None),
        _ => {
            return Err(CoverError::GlueFailed(format!(
                "the reference cover shares {shared} inside the clique cutset"
            )))
        }
    };
    let p = path.vertex_set();
    let seed1 = reference.x1 | p;
    let seed2 = reference.x2 | p;
    let pc = if p.len() == 1 {
        // Everything near a single vertex sits inside its closed
        // neighbourhood, which is chordal in the class.
        let v = path.first();
        let rest = (g.neighbors(v) & c) - seed2;
        Precover::within(g, piece, path, seed1 | rest, seed2)
    } else {
        let partial = Precover::within(g, piece, path, seed1, seed2);
        complete_within(g, piece, &partial, None)?.precover
    };
    let (mut cover, _) = extend_within(g, piece, &pc)?;
    if let Some(v) = dropped {
        for (x, keep) in [(&mut cover.x1, reference.x1), (&mut cover.x2, reference.x2)] {
            if !keep.contains(v) {
                x.remove(v);
            }
        }
    }
    if cover.restrict(q) != *reference {
        return Err(CoverError::GlueFailed("re-solved piece does not match the cutset split".into()));
    }
    Ok(cover)
}
