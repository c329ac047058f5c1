//! Clique, star and double-star cutsets.
//!
//! Star-type cutsets are found through their core `K` (one centre, or two
//! adjacent centres): a cutset `C` with `K ⊆ C ⊆ N[K]` exists iff one of
//!
//! * `G \ N[K]` has two or more components (take `C = N[K]`);
//! * `G \ N[K]` has one component `D` and some `a ∈ N(K)` has no neighbour in
//!   `D` (take `C = N[K] \ {a}`);
//! * `N[K] = V` and `N(K)` has two non-adjacent vertices `a`, `b` (take
//!   `C = N[K] \ {a, b}`).
//!
//! Any cutset leaves `D` intact, so some vertex of `N(K) \ C` must miss `D`
//! (or, when there is no `D`, two left-over vertices must be non-adjacent);
//! dropping just that vertex (or pair) from `N[K]` still disconnects. The
//! test is therefore complete.

use serde::{Deserialize, Serialize};

use super::DetectError;
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutsetKind {
    Clique,
    Star,
    FullStar,
    ProperStar,
    DoubleStar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cutset {
    pub kind: CutsetKind,
    pub verts: VertexSet,
    pub centers: Vec<usize>,
}

impl Cutset {
    /// Re-checks the invariants of `kind` against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        g.check_set(self.verts).map_err(|e| e.to_string())?;
        if g.components_within(g.vertices() - self.verts).len() < 2 {
            return Err("removal does not disconnect".into());
        }
        let star_at = |v: usize| self.verts.contains(v) && self.verts.is_subset(g.closed_neighbors(v));
        let ok = match (self.kind, self.centers.as_slice()) {
            (CutsetKind::Clique, _) => g.is_clique(self.verts),
            (CutsetKind::Star, &[v]) => star_at(v),
            (CutsetKind::FullStar, &[v]) => self.verts == g.closed_neighbors(v),
            (CutsetKind::ProperStar, &[v]) => star_at(v) && !g.is_clique(self.verts),
            (CutsetKind::DoubleStar, &[u, v]) => {
                g.has_edge(u, v)
                    && self.verts.contains(u)
                    && self.verts.contains(v)
                    && self.verts.is_subset(g.closed_neighbors(u) | g.closed_neighbors(v))
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(format!("not a {:?} cutset", self.kind))
        }
    }
}

/// Some cutset `C` with `core ⊆ C ⊆ N[core]`; the largest of the three
/// canonical shapes described in the module docs.
pub fn anchored_cutset(g: &Graph, core: VertexSet) -> Option<VertexSet> {
    anchored_candidates(g, core).next()
}

/// Every canonical candidate for `core`; empty iff no cutset exists between
/// `core` and `N[core]`.
pub fn anchored_candidates(g: &Graph, core: VertexSet) -> impl Iterator<Item = VertexSet> + '_ {
    let closed = g.closed_nbhd(core);
    let open = closed - core;
    let comps = g.components_within(g.vertices() - closed);
    let mut out = Vec::new();
    match comps.len() {
        0 => {
            for a in open {
                for b in open {
                    if a < b && !g.has_edge(a, b) {
                        out.push(closed.without(a).without(b));
                    }
                }
            }
        }
        1 => {
            let d = comps[0];
            for a in open {
                if !g.neighbors(a).intersects(d) {
                    out.push(closed.without(a));
                }
            }
        }
        _ => out.push(closed),
    }
    out.into_iter()
}

/// Drops vertices outside `keep` from the cutset `c`, lowest id first, as
/// long as the remainder still disconnects.
pub fn shrink_cutset(g: &Graph, mut c: VertexSet, keep: VertexSet) -> VertexSet {
    for v in c - keep {
        let smaller = c.without(v);
        if g.components_within(g.vertices() - smaller).len() >= 2 {
            c = smaller;
        }
    }
    c
}

/// Whether some star cutset is centred at `v`.
pub fn is_star_center(g: &Graph, v: usize) -> bool {
    anchored_cutset(g, VertexSet::singleton(v)).is_some()
}

pub fn has_star_cutset(g: &Graph) -> bool {
    g.is_connected() && (0..g.n()).any(|v| is_star_center(g, v))
}

fn proper_star_at(g: &Graph, v: usize) -> Option<VertexSet> {
    anchored_candidates(g, VertexSet::singleton(v)).find(|&c| !g.is_clique(c))
}

/// Calls `f` on every non-empty clique of `G[within]` in lexicographic order;
/// stops when `f` returns true.
pub fn for_each_clique<F: FnMut(VertexSet) -> bool>(g: &Graph, within: VertexSet, mut f: F) -> bool {
    fn go<F: FnMut(VertexSet) -> bool>(g: &Graph, cur: VertexSet, cand: VertexSet, f: &mut F) -> bool {
        for v in cand {
            let next = cur.with(v);
            if f(next) {
                return true;
            }
            let rest = cand & g.neighbors(v) & !VertexSet::full(v + 1);
            if go(g, next, rest, f) {
                return true;
            }
        }
        false
    }
    go(g, VertexSet::EMPTY, within, &mut f)
}

/// All clique cutsets, smallest first (ties by vertex bits).
pub fn clique_cutsets(g: &Graph) -> Vec<VertexSet> {
    let all = g.vertices();
    let mut out = Vec::new();
    for_each_clique(g, all, |c| {
        if g.components_within(all - c).len() >= 2 {
            out.push(c);
        }
        false
    });
    out.sort_by_key(|c| (c.len(), c.bits()));
    out
}

/// A smallest clique cutset.
pub fn clique_cutset(g: &Graph) -> Option<VertexSet> {
    clique_cutsets(g).into_iter().next()
}

/// Maximal cliques of `G[within]` (Bron–Kerbosch with pivoting).
pub fn maximal_cliques(g: &Graph, within: VertexSet) -> Vec<VertexSet> {
    fn bk(g: &Graph, r: VertexSet, mut p: VertexSet, mut x: VertexSet, out: &mut Vec<VertexSet>) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r);
            }
            return;
        }
        let pivot = (p | x).iter().max_by_key(|&u| (g.neighbors(u) & p).len()).expect("p non-empty");
        for v in p - g.neighbors(pivot) {
            let nv = g.neighbors(v);
            bk(g, r.with(v), p & nv, x & nv, out);
            p.remove(v);
            x.insert(v);
        }
    }
    let mut out = Vec::new();
    bk(g, VertexSet::EMPTY, within, VertexSet::EMPTY, &mut out);
    out.sort();
    out
}

/// A cutset of `kind`, searching centres in id order. For
/// [`CutsetKind::Star`] the result is the smallest inclusion-minimal star
/// cutset over all centres. `centers` pins the edge for
/// [`CutsetKind::DoubleStar`].
pub fn find_cutset(g: &Graph, kind: CutsetKind, centers: Option<(usize, usize)>) -> Result<Option<Cutset>, DetectError> {
    if !g.is_connected() {
        return Err(DetectError::Disconnected);
    }
    let n = g.n();
    let found = match kind {
        CutsetKind::Clique => clique_cutset(g).map(|c| Cutset { kind, verts: c, centers: Vec::new() }),
        CutsetKind::Star => (0..n)
            .filter_map(|v| {
                let core = VertexSet::singleton(v);
                anchored_cutset(g, core).map(|c| (shrink_cutset(g, c, core), v))
            })
            .min_by_key(|(c, v)| (c.len(), *v))
            .map(|(c, v)| Cutset { kind, verts: c, centers: vec![v] }),
        CutsetKind::FullStar => (0..n).find_map(|v| {
            let c = g.closed_neighbors(v);
            (g.components_within(g.vertices() - c).len() >= 2).then(|| Cutset { kind, verts: c, centers: vec![v] })
        }),
        CutsetKind::ProperStar => {
            (0..n).find_map(|v| proper_star_at(g, v).map(|c| Cutset { kind, verts: c, centers: vec![v] }))
        }
        CutsetKind::DoubleStar => {
            let pairs: Vec<(usize, usize)> = match centers {
                Some((u, v)) => {
                    g.check_vertex(u)?;
                    g.check_vertex(v)?;
                    if !g.has_edge(u, v) {
                        return Err(DetectError::Precondition(format!("double-star centres {u},{v} are not adjacent")));
                    }
                    vec![(u.min(v), u.max(v))]
                }
                None => g.edges().collect(),
            };
            pairs.into_iter().find_map(|(u, v)| {
                anchored_cutset(g, VertexSet::from_iter([u, v])).map(|c| Cutset { kind, verts: c, centers: vec![u, v] })
            })
        }
    };
    if let Some(c) = &found {
        debug_assert_eq!(c.validate(g), Ok(()));
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{figure1, named_graph};

    /// Independent check: every subset `C` with `v ∈ C ⊆ N[v]`.
    fn brute_star_center(g: &Graph, v: usize) -> bool {
        let nb: Vec<usize> = g.neighbors(v).to_vec();
        (0u32..1 << nb.len()).any(|m| {
            let c: VertexSet = nb.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &u)| u).collect();
            g.components_within(g.vertices() - c.with(v)).len() >= 2
        })
    }

    #[test]
    fn butterfly_star() {
        let g = named_graph("butterfly").unwrap();
        let c = find_cutset(&g, CutsetKind::Star, None).unwrap().unwrap();
        c.validate(&g).unwrap();
        assert_eq!(c.verts, VertexSet::singleton(2));
        assert_eq!(c.centers, vec![2]);
    }

    #[test]
    fn k4s_sharing_triangle() {
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (0, 4), (1, 4), (2, 4)]).unwrap();
        let c = find_cutset(&g, CutsetKind::Clique, None).unwrap().unwrap();
        assert_eq!(c.verts.to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn figure1_star_cutsets() {
        let g = figure1();
        // {x, y1, z1} ⊆ N[y1] cuts y2 off; x itself centres none.
        let c = find_cutset(&g, CutsetKind::Star, None).unwrap().unwrap();
        c.validate(&g).unwrap();
        let by_hand = Cutset { kind: CutsetKind::ProperStar, verts: VertexSet::from_iter([0, 1, 7]), centers: vec![1] };
        by_hand.validate(&g).unwrap();
        assert!(!is_star_center(&g, 0));
        for v in 0..10 {
            assert_eq!(is_star_center(&g, v), brute_star_center(&g, v));
        }
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(find_cutset(&g, CutsetKind::Star, None), Err(DetectError::Disconnected));
    }

    #[test]
    fn anchored_test_matches_brute_force_on_small_corpus() {
        for g in crate::corpus::vendored_corpus().filter(|g| g.n() <= 6) {
            for v in 0..g.n() {
                assert_eq!(is_star_center(&g, v), brute_star_center(&g, v), "{g:?} centre {v}");
            }
        }
    }

    #[test]
    fn proper_star_excludes_cliques() {
        // The butterfly's centre also centres {1, 2, 4}, which is no clique.
        let g = named_graph("butterfly").unwrap();
        find_cutset(&g, CutsetKind::ProperStar, None).unwrap().unwrap().validate(&g).unwrap();
        // Every star cutset of a path is a clique.
        let p = named_graph("path(4)").unwrap();
        assert!(find_cutset(&p, CutsetKind::ProperStar, None).unwrap().is_none());
        // C4 with a two-edge tail at 0: N[0] separates 2 from 5.
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5)]).unwrap();
        let c = find_cutset(&g, CutsetKind::ProperStar, None).unwrap().unwrap();
        c.validate(&g).unwrap();
    }

    #[test]
    fn double_star_on_path() {
        let g = named_graph("path(5)").unwrap();
        let c = find_cutset(&g, CutsetKind::DoubleStar, Some((1, 2))).unwrap().unwrap();
        c.validate(&g).unwrap();
        assert!(find_cutset(&g, CutsetKind::DoubleStar, Some((0, 2))).is_err());
    }

    #[test]
    fn maximal_cliques_of_butterfly() {
        let g = named_graph("butterfly").unwrap();
        let cl = maximal_cliques(&g, g.vertices());
        assert_eq!(cl.len(), 2);
        assert!(cl.iter().all(|c| c.len() == 3 && c.contains(2)));
    }
}
