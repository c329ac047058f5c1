//! Chordality (maximum cardinality search) and exhaustive hole search.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Hole, VertexSet, MAX_VERTICES};

/// Maximum cardinality search over `G[s]`, minimum id on ties.
fn mcs_order(g: &Graph, s: VertexSet) -> Vec<usize> {
    let mut weight = [0u32; MAX_VERTICES];
    let mut left = s;
    let mut order = Vec::with_capacity(s.len());
    while !left.is_empty() {
        let mut best = usize::MAX;
        let mut best_w = 0;
        for v in left {
            if best == usize::MAX || weight[v] > best_w {
                best = v;
                best_w = weight[v];
            }
        }
        left.remove(best);
        order.push(best);
        for w in g.neighbors(best) & left {
            weight[w] += 1;
        }
    }
    order
}

/// Whether `G[s]` is chordal.
pub fn is_chordal_set(g: &Graph, s: VertexSet) -> bool {
    if s.len() < 4 {
        return true;
    }
    let order = mcs_order(g, s);
    let mut rank = [0usize; MAX_VERTICES];
    let mut before = VertexSet::EMPTY;
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
        let f = g.neighbors(v) & before;
        if let Some(u) = f.iter().max_by_key(|&u| rank[u]) {
            if !f.without(u).is_subset(g.neighbors(u)) {
                return false;
            }
        }
        before.insert(v);
    }
    true
}

pub fn is_chordal(g: &Graph) -> bool {
    is_chordal_set(g, g.vertices())
}

/// A hole of `G[s]`, or `None` when `G[s]` is chordal.
///
/// Any hole has a vertex `v` whose two hole-neighbours `u`, `w` are joined
/// by a path avoiding `N[v]`; conversely a shortest such path closes an
/// induced cycle with `v`. So scanning every `(v, u, w)` is complete.
pub fn hole_in_set(g: &Graph, s: VertexSet) -> Option<Hole> {
    if is_chordal_set(g, s) {
        return None;
    }
    for v in s {
        let nv = g.neighbors(v) & s;
        let outside = s - g.closed_neighbors(v);
        for u in nv {
            for w in nv {
                if w <= u || g.has_edge(u, w) {
                    continue;
                }
                let within = outside.with(u).with(w);
                if let Some(path) = g.shortest_path_within(u, w, within) {
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    return Some(Hole::new_unchecked(cycle));
                }
            }
        }
    }
    unreachable!("a graph that fails the elimination test has a hole")
}

/// Whether `g` is chordal, with a hole when it is not.
pub fn chordal_witness(g: &Graph) -> (bool, Option<Hole>) {
    match hole_in_set(g, g.vertices()) {
        None => (true, None),
        Some(h) => (false, Some(h)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Any,
    Even,
    Odd,
}

impl Parity {
    pub fn accepts(self, len: usize) -> bool {
        match self {
            Parity::Any => true,
            Parity::Even => len.is_multiple_of(2),
            Parity::Odd => len % 2 == 1,
        }
    }
}

/// Calls `f` once per hole of `G[within]`. Each hole is reported starting at
/// its minimum vertex, with the smaller of that vertex's two hole-neighbours
/// second.
pub fn for_each_hole<F>(g: &Graph, within: VertexSet, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let mut path = Vec::with_capacity(within.len());
    for s in within {
        let allowed = within & !VertexSet::full(s + 1);
        for p1 in g.neighbors(s) & allowed {
            path.clear();
            path.extend([s, p1]);
            extend_hole(g, allowed, &mut path, VertexSet::EMPTY, &mut f)?;
        }
    }
    ControlFlow::Continue(())
}

/// `path = [s, p1, .., pk]`; `inner` is `N[{p1, .., p(k-1)}]`.
fn extend_hole<F>(g: &Graph, allowed: VertexSet, path: &mut Vec<usize>, inner: VertexSet, f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let s = path[0];
    let last = *path.last().expect("path has two vertices");
    let candidates = (g.neighbors(last) & allowed) - inner;
    for x in candidates {
        if g.has_edge(s, x) {
            if path.len() >= 3 && x > path[1] {
                path.push(x);
                let r = f(path);
                path.pop();
                r?;
            }
        } else {
            path.push(x);
            let r = extend_hole(g, allowed, path, inner | g.closed_neighbors(last), f);
            path.pop();
            r?;
        }
    }
    ControlFlow::Continue(())
}

/// Some hole of length at least `min_len` with the requested parity that
/// avoids `avoid`. The search is exhaustive.
pub fn find_hole(g: &Graph, parity: Parity, min_len: usize, avoid: VertexSet) -> Option<Hole> {
    let mut found = None;
    let _ = for_each_hole(g, g.vertices() - avoid, |h| {
        if h.len() >= min_len && parity.accepts(h.len()) {
            found = Some(Hole::new_unchecked(h.to_vec()));
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

pub fn all_holes(g: &Graph) -> Vec<Hole> {
    let mut out = Vec::new();
    let _ = for_each_hole(g, g.vertices(), |h| {
        out.push(Hole::new_unchecked(h.to_vec()));
        ControlFlow::Continue(())
    });
    out
}

pub fn is_even_hole_free(g: &Graph) -> bool {
    find_hole(g, Parity::Even, 4, VertexSet::EMPTY).is_none()
}

/// Calls `f` once per induced path of `g` with at least one vertex, in one
/// orientation (first vertex smaller than last; single vertices once).
pub fn for_each_induced_path<F>(g: &Graph, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let mut path = Vec::with_capacity(g.n());
    for s in 0..g.n() {
        path.clear();
        path.push(s);
        f(&path)?;
        grow_path(g, &mut path, VertexSet::EMPTY, &mut f)?;
    }
    ControlFlow::Continue(())
}

/// `blocked` is `N[path minus its last vertex]`.
fn grow_path<F>(g: &Graph, path: &mut Vec<usize>, blocked: VertexSet, f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let last = *path.last().expect("non-empty path");
    let next_blocked = blocked | g.closed_neighbors(last);
    for x in g.neighbors(last) - blocked {
        path.push(x);
        if x > path[0] {
            f(path)?;
        }
        grow_path(g, path, next_blocked, f)?;
        path.pop();
    }
    ControlFlow::Continue(())
}
