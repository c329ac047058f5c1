//! Completing a partial precover over `N[P]`.
//!
//! Each unassigned `v ∈ N[P]` is adjacent to exactly one end `p_i` of the
//! path. Its *opposite set* is `N(p_{k+1-i})` for paths with at least three
//! vertices and the private part `N(p_{k+1-i}) \ N[p_i]` for a single edge,
//! path vertices excluded in both cases. Then:
//!
//! * `v` anticomplete to its opposite set goes to `W1'`;
//! * `v` with its opposite neighbour in `W1'` goes to `W2'`;
//! * `v` with its opposite neighbour in `W2'` goes to `W1'`.
//!
//! A vertex whose opposite neighbour is still unassigned waits. When only
//! waiting vertices remain they reference each other in cycles; the
//! smallest id on a cycle goes to `W1'` and the rules resume.

use super::{CoverError, Precover};
use crate::detect::hole_in_set;
use crate::graph::{Graph, VertexSet};

/// Result of [`complete_precover`]; `tie_breaks` lists the vertices that
/// were placed by breaking a deferral cycle, in the order it happened.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    pub precover: Precover,
    pub tie_breaks: Vec<usize>,
}

/// Completes `pc` on `g`, processing unassigned vertices in id order.
pub fn complete_precover(g: &Graph, pc: &Precover) -> Result<Completion, CoverError> {
    complete_within(g, g.vertices(), pc, None)
}

/// As [`complete_precover`], visiting unassigned vertices in `order` (ids not
/// in need of assignment are skipped; missing ones are appended by id).
pub fn complete_precover_with_order(g: &Graph, pc: &Precover, order: &[usize]) -> Result<Completion, CoverError> {
    complete_within(g, g.vertices(), pc, Some(order))
}

pub(crate) fn complete_within(
    g: &Graph,
    s: VertexSet,
    pc: &Precover,
    order: Option<&[usize]>,
) -> Result<Completion, CoverError> {
    pc.check_partial(g, s)?;
    let p = pc.path_set();
    if pc.path.interior().iter().any(|v| (g.neighbors(v) & s).len() != 2) {
        return Err(CoverError::Precondition(format!("path {} is not flat", pc.path)));
    }
    let (first, last) = (pc.path.first(), pc.path.last());
    let nb = |v: usize| g.neighbors(v) & s;
    let assigned = pc.w1 | pc.w2;
    let common = if first == last { nb(first) } else { nb(first) & nb(last) };
    if !common.is_subset(assigned) {
        return Err(CoverError::Precondition(format!(
            "common neighbours {} of the path ends are unassigned",
            common - assigned
        )));
    }
    let np = g.closed_nbhd(p) & s;
    let todo = np - assigned;
    if todo.is_empty() {
        return Ok(Completion { precover: Precover { complete: true, ..pc.clone() }, tie_breaks: Vec::new() });
    }

    // The unique opposite neighbour of each waiting vertex, if any.
    let mut partner = [None; crate::graph::MAX_VERTICES];
    for v in todo {
        let (near, far) = if nb(first).contains(v) { (first, last) } else { (last, first) };
        debug_assert!(nb(near).contains(v) && !nb(far).contains(v));
        let opposite = if pc.path.vertex_count() == 2 {
            nb(far) - g.closed_neighbors(near) - p
        } else {
            nb(far) - p
        };
        let hits = g.neighbors(v) & opposite;
        match hits.len() {
            0 => {}
            1 => partner[v] = hits.first(),
            count => return Err(CoverError::OppositeNeighbors { vertex: v, count }),
        }
    }

    let mut visit: Vec<usize> = match order {
        Some(o) => o.iter().copied().filter(|&v| todo.contains(v)).collect(),
        None => Vec::new(),
    };
    for v in todo {
        if !visit.contains(&v) {
            visit.push(v);
        }
    }

    let (mut w1, mut w2) = (pc.w1, pc.w2);
    let mut left = todo;
    let mut tie_breaks = Vec::new();
    while !left.is_empty() {
        let mut progress = false;
        for &v in &visit {
            if !left.contains(v) {
                continue;
            }
            let to_first = match partner[v] {
                None => Some(true),
                Some(u) if w1.contains(u) => Some(false),
                Some(u) if w2.contains(u) => Some(true),
                Some(_) => None,
            };
            if let Some(to_first) = to_first {
                if to_first {
                    w1.insert(v);
                } else {
                    w2.insert(v);
                }
                left.remove(v);
                progress = true;
            }
        }
        if !progress {
            let t = smallest_on_cycle(&partner, left);
            w1.insert(t);
            left.remove(t);
            tie_breaks.push(t);
        }
    }

    for (side, w) in [(1, w1), (2, w2)] {
        if let Some(h) = hole_in_set(g, w) {
            return Err(CoverError::Precondition(format!("completed w{side} contains the hole {h}")));
        }
    }
    let precover = Precover { path: pc.path.clone(), w1, w2, complete: true };
    Ok(Completion { precover, tie_breaks })
}

/// Smallest vertex lying on a cycle of the waiting relation restricted to
/// `left`. Every waiting vertex points into `left`, so a cycle exists.
fn smallest_on_cycle(partner: &[Option<usize>], left: VertexSet) -> usize {
    let mut best = usize::MAX;
    for start in left {
        let mut seen = Vec::new();
        let mut cur = start;
        while !seen.contains(&cur) {
            seen.push(cur);
            cur = partner[cur].expect("waiting vertices have a partner");
        }
        let pos = seen.iter().position(|&x| x == cur).expect("cycle entry was seen");
        best = best.min(*seen[pos..].iter().min().expect("non-empty cycle"));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::InducedPath;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn c5_edge_path() {
        let g = Graph::cycle(5).unwrap();
        let p = InducedPath::new(&g, vec![0, 1]).unwrap();
        let pc = Precover::new(&g, p, set(&[0, 1]), set(&[0, 1])).unwrap();
        let done = complete_precover(&g, &pc).unwrap();
        assert_eq!(done.precover.w1, set(&[0, 1, 2, 4]));
        assert_eq!(done.precover.w2, set(&[0, 1]));
        assert!(done.tie_breaks.is_empty());
    }

    #[test]
    fn c5_three_vertex_path_breaks_a_cycle() {
        let g = Graph::cycle(5).unwrap();
        let p = InducedPath::new(&g, vec![0, 1, 2]).unwrap();
        let pc = Precover::new(&g, p, set(&[0, 1, 2]), set(&[0, 1, 2])).unwrap();
        let done = complete_precover(&g, &pc).unwrap();
        // v4 (id 3) and v5 (id 4) wait on each other; the smaller goes first.
        assert_eq!(done.tie_breaks, vec![3]);
        assert_eq!(done.precover.w1, set(&[0, 1, 2, 3]));
        assert_eq!(done.precover.w2, set(&[0, 1, 2, 4]));
        let rev = complete_precover_with_order(&g, &pc, &[4, 3]).unwrap();
        assert_eq!(rev, done);
    }

    #[test]
    fn complete_input_is_identity() {
        let g = Graph::cycle(5).unwrap();
        let pc = Precover::at_vertex(&g, 0).unwrap();
        assert_eq!(complete_precover(&g, &pc).unwrap().precover, pc);
    }

    #[test]
    fn single_vertex_needs_full_neighbourhood() {
        let g = Graph::cycle(5).unwrap();
        let pc = Precover::new(&g, InducedPath::single(0), set(&[0, 1]), set(&[0])).unwrap();
        assert!(matches!(complete_precover(&g, &pc), Err(CoverError::Precondition(_))));
    }

    #[test]
    fn non_flat_path_rejected() {
        // Path 0-1-2 where 1 has an extra pendant neighbour 3.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        let p = InducedPath::new(&g, vec![0, 1, 2]).unwrap();
        let pc = Precover::new(&g, p, set(&[0, 1, 2]), set(&[0, 1, 2])).unwrap();
        assert!(complete_precover(&g, &pc).is_err());
    }
}
