//! Case dispatcher over the decomposition outcomes for even-hole-free graphs.

use serde::{Deserialize, Serialize};

use super::basic::{is_pyramid, recognize_basic, BasicRealization, PyramidWitness};
use super::cutset::{find_cutset, Cutset, CutsetKind};
use super::twojoin::{find_two_join, TwoJoin, TWO_JOIN_LIMIT};
use super::DetectError;
use crate::graph::{Graph, Hole};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", content = "witness", rename_all = "snake_case")]
pub enum DecompositionOutcome {
    Clique,
    Hole(Hole),
    Pyramid(PyramidWitness),
    Basic(BasicRealization),
    CliqueCutset(Cutset),
    StarCutset(Cutset),
    TwoJoin(TwoJoin),
}

impl DecompositionOutcome {
    pub fn name(&self) -> &'static str {
        match self {
            DecompositionOutcome::Clique => "clique",
            DecompositionOutcome::Hole(_) => "hole",
            DecompositionOutcome::Pyramid(_) => "pyramid",
            DecompositionOutcome::Basic(_) => "basic",
            DecompositionOutcome::CliqueCutset(_) => "clique_cutset",
            DecompositionOutcome::StarCutset(_) => "star_cutset",
            DecompositionOutcome::TwoJoin(_) => "two_join",
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        match self {
            DecompositionOutcome::Clique => {
                if g.is_clique(g.vertices()) {
                    Ok(())
                } else {
                    Err("not a clique".into())
                }
            }
            DecompositionOutcome::Hole(h) => {
                h.validate(g).map_err(|e| e.to_string())?;
                if h.len() == g.n() {
                    Ok(())
                } else {
                    Err("hole does not span the graph".into())
                }
            }
            DecompositionOutcome::Pyramid(p) => p.validate(g),
            DecompositionOutcome::Basic(b) => b.validate(g),
            DecompositionOutcome::CliqueCutset(c) | DecompositionOutcome::StarCutset(c) => c.validate(g),
            DecompositionOutcome::TwoJoin(t) => t.validate(g),
        }
    }
}

/// The cycle order of `g` when `g` is itself a hole.
pub fn whole_graph_hole(g: &Graph) -> Option<Hole> {
    let n = g.n();
    if n < 4 || (0..n).any(|v| g.degree(v) != 2) || !g.is_connected() {
        return None;
    }
    let mut verts = vec![0];
    let mut prev = 0;
    let mut cur = g.neighbors(0).first().expect("degree two");
    while cur != 0 {
        verts.push(cur);
        let next = g.neighbors(cur).without(prev).first().expect("degree two");
        prev = cur;
        cur = next;
    }
    Some(Hole::new_unchecked(verts))
}

/// First applicable outcome in the order clique, hole, pyramid, basic,
/// clique cutset, star cutset, 2-join.
pub fn decompose(g: &Graph) -> Result<DecompositionOutcome, DetectError> {
    if g.n() > TWO_JOIN_LIMIT {
        return Err(DetectError::TooLarge { n: g.n(), limit: TWO_JOIN_LIMIT });
    }
    if !g.is_connected() {
        return Err(DetectError::Disconnected);
    }
    debug_assert!(super::chordal::is_even_hole_free(g), "decompose expects an even-hole-free graph");
    if g.is_clique(g.vertices()) {
        return Ok(DecompositionOutcome::Clique);
    }
    if let Some(h) = whole_graph_hole(g) {
        return Ok(DecompositionOutcome::Hole(h));
    }
    if let Some(p) = is_pyramid(g) {
        return Ok(DecompositionOutcome::Pyramid(p));
    }
    if let Some(b) = recognize_basic(g)? {
        return Ok(DecompositionOutcome::Basic(b));
    }
    if let Some(c) = find_cutset(g, CutsetKind::Clique, None)? {
        return Ok(DecompositionOutcome::CliqueCutset(c));
    }
    if let Some(c) = find_cutset(g, CutsetKind::Star, None)? {
        return Ok(DecompositionOutcome::StarCutset(c));
    }
    if let Some(t) = find_two_join(g)? {
        return Ok(DecompositionOutcome::TwoJoin(t));
    }
    Err(DetectError::NoCaseApplies)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::gen_pyramid;

    #[test]
    fn simple_cases() {
        assert_eq!(decompose(&Graph::complete(5).unwrap()).unwrap(), DecompositionOutcome::Clique);
        let c7 = Graph::cycle(7).unwrap();
        let out = decompose(&c7).unwrap();
        assert_eq!(out.name(), "hole");
        out.validate(&c7).unwrap();
    }

    #[test]
    fn pyramid_case() {
        let g = gen_pyramid(1, 3, 3).unwrap();
        let out = decompose(&g).unwrap();
        assert_eq!(out.name(), "pyramid");
        out.validate(&g).unwrap();
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(decompose(&g), Err(DetectError::Disconnected));
    }
}
