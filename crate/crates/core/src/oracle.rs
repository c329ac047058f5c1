//! Exhaustive search for covers and extensions on small graphs.
//!
//! Nothing here calls into the cover engine or the detectors; chordality is
//! checked with its own simplicial-elimination routine so that agreement
//! between the two is real evidence.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{ChordalCover, Precover};
use crate::graph::{Graph, InducedPath, VertexSet};

/// Largest graph the cover and extension searches accept.
pub const ORACLE_LIMIT: usize = 12;
/// Largest graph [`check_fpe`] accepts.
pub const FPE_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices; the oracle is limited to {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("invalid precover: {0}")]
    BadPrecover(String),
}

/// Outcome of [`check_fpe`]. `witness` is a complete precover that does not
/// extend, present exactly when `fpe` is false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpeVerdict {
    pub fpe: bool,
    pub witness: Option<Precover>,
}

fn size_check(g: &Graph, limit: usize) -> Result<(), OracleError> {
    if g.n() > limit {
        Err(OracleError::TooLarge { n: g.n(), limit })
    } else {
        Ok(())
    }
}

/// Repeatedly strips simplicial vertices; chordal iff nothing is left.
pub fn chordal_by_elimination(g: &Graph, s: VertexSet) -> bool {
    let mut left = s;
    'outer: while !left.is_empty() {
        for v in left {
            let nb = g.neighbors(v) & left;
            if nb.iter().all(|u| nb.without(u).is_subset(g.neighbors(u))) {
                left.remove(v);
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Two-way search: `fixed1`/`fixed2` are preassigned (possibly to both
/// sides), every vertex of `free` goes to exactly one side.
fn search(g: &Graph, fixed1: VertexSet, fixed2: VertexSet, free: VertexSet) -> Option<ChordalCover> {
    if !chordal_by_elimination(g, fixed1) || !chordal_by_elimination(g, fixed2) {
        return None;
    }
    let mut order: Vec<usize> = free.to_vec();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut x = [fixed1, fixed2];
    if place(g, &order, &mut x) {
        Some(ChordalCover::new(x[0], x[1]))
    } else {
        None
    }
}

fn place(g: &Graph, order: &[usize], x: &mut [VertexSet; 2]) -> bool {
    let Some((&v, rest)) = order.split_first() else {
        return true;
    };
    for side in 0..2 {
        x[side].insert(v);
        if chordal_by_elimination(g, x[side]) && place(g, rest, x) {
            return true;
        }
        x[side].remove(v);
    }
    false
}

/// Some chordal cover of `g`, or `None` if there is none. Covers found are
/// partitions with the first side tried first, so a chordal graph gives
/// `(V, ∅)`.
pub fn brute_force_cover(g: &Graph) -> Result<Option<ChordalCover>, OracleError> {
    size_check(g, ORACLE_LIMIT)?;
    Ok(search(g, VertexSet::EMPTY, VertexSet::EMPTY, g.vertices()))
}

/// Some cover `X ⊇ W` with `x1 ∩ x2 = V(P)`, or `None`.
pub fn brute_force_extend(g: &Graph, pc: &Precover) -> Result<Option<ChordalCover>, OracleError> {
    size_check(g, ORACLE_LIMIT)?;
    let p = pc.path.vertex_set();
    let all = g.vertices();
    if !(pc.w1 | pc.w2).is_subset(all) || pc.path.validate(g).is_err() {
        return Err(OracleError::BadPrecover("sets or path leave the graph".into()));
    }
    if pc.w1 & pc.w2 != p {
        return Err(OracleError::BadPrecover("w1 ∩ w2 differs from the path".into()));
    }
    // Outside W every vertex is private to one side.
    Ok(search(g, pc.w1, pc.w2, all - (pc.w1 | pc.w2)))
}

/// Whether every complete precover on every flat path (with `weak`, every
/// path of one or two vertices) extends.
pub fn check_fpe(g: &Graph, weak: bool) -> Result<FpeVerdict, OracleError> {
    size_check(g, FPE_LIMIT)?;
    for path in candidate_paths(g, weak) {
        for pc in complete_precovers(g, &path) {
            if search(g, pc.w1, pc.w2, g.vertices() - (pc.w1 | pc.w2)).is_none() {
                return Ok(FpeVerdict { fpe: false, witness: Some(pc) });
            }
        }
    }
    Ok(FpeVerdict { fpe: true, witness: None })
}

/// Every complete precover on `path`: each vertex of `N(P) \ V(P)` goes to
/// one side, and both sides must be chordal.
pub fn complete_precovers(g: &Graph, path: &InducedPath) -> Vec<Precover> {
    let p = path.vertex_set();
    let ring: Vec<usize> = (closed(g, p) - p).to_vec();
    let mut out = Vec::new();
    for mask in 0u64..(1 << ring.len()) {
        let (mut w1, mut w2) = (p, p);
        for (i, &v) in ring.iter().enumerate() {
            if mask >> i & 1 == 1 {
                w2.insert(v);
            } else {
                w1.insert(v);
            }
        }
        if chordal_by_elimination(g, w1) && chordal_by_elimination(g, w2) {
            out.push(Precover { path: path.clone(), w1, w2, complete: true });
        }
    }
    out
}

fn closed(g: &Graph, s: VertexSet) -> VertexSet {
    s.iter().fold(s, |acc, v| acc | g.neighbors(v))
}

/// The paths [`check_fpe`] quantifies over: single vertices, edges, and
/// (unless `weak`) longer induced paths whose interior vertices have degree
/// two. Each path is listed once, from its smaller end.
pub fn candidate_paths(g: &Graph, weak: bool) -> Vec<InducedPath> {
    let mut out = Vec::new();
    for v in g.vertices() {
        out.push(InducedPath::single(v));
        let mut stack = vec![vec![v]];
        while let Some(cur) = stack.pop() {
            let last = *cur.last().expect("non-empty");
            if cur.len() >= 2 && cur[0] < last {
                out.push(InducedPath::new(g, cur.clone()).expect("built as induced path"));
            }
            if weak && cur.len() == 2 {
                continue;
            }
            if cur.len() >= 2 && g.degree(last) != 2 {
                continue;
            }
            let body: VertexSet = cur[..cur.len() - 1].iter().copied().collect();
            for u in g.neighbors(last) {
                if cur.contains(&u) || g.neighbors(u).intersects(body) {
                    continue;
                }
                let mut next = cur.clone();
                next.push(u);
                stack.push(next);
            }
        }
    }
    out
}
