//! 2-joins by exhaustive search over vertex bipartitions.

use serde::{Deserialize, Serialize};

use super::DetectError;
use crate::graph::{Graph, InducedPath, VertexSet, MAX_VERTICES};

/// Largest graph [`find_two_join`] accepts.
pub const TWO_JOIN_LIMIT: usize = 16;

/// Six-block partition with `A1`–`A2` and `B1`–`B2` complete and no other
/// edges between `Z1 = A1 ∪ C1 ∪ B1` and `Z2 = A2 ∪ C2 ∪ B2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoJoin {
    pub a1: VertexSet,
    pub c1: VertexSet,
    pub b1: VertexSet,
    pub a2: VertexSet,
    pub c2: VertexSet,
    pub b2: VertexSet,
    /// From `A1` to `B1` with interior in `C1`.
    pub m1: InducedPath,
    /// From `A2` to `B2` with interior in `C2`.
    pub m2: InducedPath,
}

impl TwoJoin {
    pub fn z1(&self) -> VertexSet {
        self.a1 | self.c1 | self.b1
    }

    pub fn z2(&self) -> VertexSet {
        self.a2 | self.c2 | self.b2
    }

    /// The same 2-join with sides exchanged.
    pub fn swapped(&self) -> TwoJoin {
        TwoJoin {
            a1: self.a2,
            c1: self.c2,
            b1: self.b2,
            a2: self.a1,
            c2: self.c1,
            b2: self.b1,
            m1: self.m2.clone(),
            m2: self.m1.clone(),
        }
    }

    /// The same 2-join with the `A` and `B` roles exchanged on both sides.
    pub fn mirrored(&self) -> TwoJoin {
        TwoJoin {
            a1: self.b1,
            c1: self.c1,
            b1: self.a1,
            a2: self.b2,
            c2: self.c2,
            b2: self.a2,
            m1: self.m1.reversed(),
            m2: self.m2.reversed(),
        }
    }

    /// Vertex set of the block of side `i` (1 or 2): `Z_i` plus the marker
    /// path of the other side.
    pub fn block(&self, i: usize) -> VertexSet {
        match i {
            1 => self.z1() | self.m2.vertex_set(),
            2 => self.z2() | self.m1.vertex_set(),
            _ => panic!("2-join sides are 1 and 2"),
        }
    }

    /// Checks every clause of the definition against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let parts = [self.a1, self.c1, self.b1, self.a2, self.c2, self.b2];
        let mut seen = VertexSet::EMPTY;
        for p in parts {
            if p.intersects(seen) {
                return Err("blocks overlap".into());
            }
            seen |= p;
        }
        if seen != g.vertices() {
            return Err("blocks do not cover the vertex set".into());
        }
        let (z1, z2) = (self.z1(), self.z2());
        for v in z1 {
            let cross = g.neighbors(v) & z2;
            let want = if self.a1.contains(v) {
                self.a2
            } else if self.b1.contains(v) {
                self.b2
            } else {
                VertexSet::EMPTY
            };
            if cross != want {
                return Err(format!("vertex {v} has cross neighbours {cross}, expected {want}"));
            }
        }
        for (m, a, c, b, z, name) in [
            (&self.m1, self.a1, self.c1, self.b1, z1, "M1"),
            (&self.m2, self.a2, self.c2, self.b2, z2, "M2"),
        ] {
            m.validate(g).map_err(|e| format!("{name}: {e}"))?;
            if m.vertex_count() < 2 || !a.contains(m.first()) || !b.contains(m.last()) || !m.interior().is_subset(c) {
                return Err(format!("{name} does not run from A through C to B"));
            }
            if m.vertex_set() == z {
                return Err(format!("side of {name} is just its marker path"));
            }
        }
        Ok(())
    }
}

/// Lexicographically smallest among the shortest paths from `a` to `b` with
/// interior in `c`.
pub fn marker_path(g: &Graph, a: VertexSet, c: VertexSet, b: VertexSet) -> Option<InducedPath> {
    let mut dist = [usize::MAX; MAX_VERTICES];
    for v in b {
        dist[v] = 0;
    }
    let mut frontier = b;
    let mut reached = b;
    let mut d = 0;
    while !frontier.is_empty() {
        d += 1;
        let next = (g.open_nbhd(frontier) & c) - reached;
        for v in next {
            dist[v] = d;
        }
        reached |= next;
        frontier = next;
    }
    let through = |v: usize| g.neighbors(v) & reached;
    let (start, len) = a
        .iter()
        .filter_map(|v| through(v).iter().map(|w| dist[w]).min().map(|m| (v, m + 1)))
        .min_by_key(|&(v, m)| (m, v))?;
    let mut verts = vec![start];
    let mut remaining = len;
    let mut cur = start;
    while remaining > 0 {
        remaining -= 1;
        cur = through(cur).iter().find(|&w| dist[w] == remaining).expect("distance labels are consistent");
        verts.push(cur);
    }
    Some(InducedPath::new_unchecked(verts))
}

/// The 2-join with first side `z1`, if the split is one.
pub fn two_join_from_side(g: &Graph, z1: VertexSet) -> Option<TwoJoin> {
    let z2 = g.vertices() - z1;
    if z1.len() < 3 || z2.len() < 3 {
        return None;
    }
    let mut groups: Vec<(VertexSet, VertexSet)> = Vec::with_capacity(2);
    for v in z1 {
        let cross = g.neighbors(v) & z2;
        if cross.is_empty() {
            continue;
        }
        if let Some((_, members)) = groups.iter_mut().find(|(c, _)| *c == cross) {
            members.insert(v);
        } else if groups.len() < 2 {
            groups.push((cross, VertexSet::singleton(v)));
        } else {
            return None;
        }
    }
    if groups.len() != 2 || groups[0].0.intersects(groups[1].0) {
        return None;
    }
    let (a2, a1) = groups[0];
    let (b2, b1) = groups[1];
    let c1 = z1 - a1 - b1;
    let c2 = z2 - a2 - b2;
    let m1 = marker_path(g, a1, c1, b1)?;
    let m2 = marker_path(g, a2, c2, b2)?;
    if m1.vertex_set() == z1 || m2.vertex_set() == z2 {
        return None;
    }
    Some(TwoJoin { a1, c1, b1, a2, c2, b2, m1, m2 })
}

fn check_size(g: &Graph) -> Result<(), DetectError> {
    if g.n() > TWO_JOIN_LIMIT {
        Err(DetectError::TooLarge { n: g.n(), limit: TWO_JOIN_LIMIT })
    } else {
        Ok(())
    }
}

/// Visits each bipartition once (vertex 0 always on the first side).
fn side_candidates(g: &Graph) -> impl Iterator<Item = VertexSet> + '_ {
    let n = g.n();
    let rest = if n == 0 { 0 } else { n - 1 };
    (0u64..(1u64 << rest)).map(|m| VertexSet::from_bits((m << 1) | 1))
}

/// First 2-join in order of the first side's vertex bits.
pub fn find_two_join(g: &Graph) -> Result<Option<TwoJoin>, DetectError> {
    check_size(g)?;
    if g.n() < 6 {
        return Ok(None);
    }
    Ok(side_candidates(g).find_map(|z1| two_join_from_side(g, z1)))
}

/// Every bipartition that is a 2-join (one orientation each).
pub fn all_two_joins(g: &Graph) -> Result<Vec<TwoJoin>, DetectError> {
    check_size(g)?;
    if g.n() < 6 {
        return Ok(Vec::new());
    }
    Ok(side_candidates(g).filter_map(|z1| two_join_from_side(g, z1)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// u1..u4 = 0..3, v1..v3 = 4..6.
    fn seven() -> Graph {
        Graph::from_edges(7, [(0, 1), (1, 2), (0, 3), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (0, 4), (2, 5)]).unwrap()
    }

    #[test]
    fn seven_vertex_example() {
        let g = seven();
        let s = |v: &[usize]| VertexSet::from_iter(v.iter().copied());
        let expected = TwoJoin {
            a1: s(&[0]),
            c1: s(&[1, 3]),
            b1: s(&[2]),
            a2: s(&[4]),
            c2: s(&[6]),
            b2: s(&[5]),
            m1: InducedPath::new(&g, vec![0, 1, 2]).unwrap(),
            m2: InducedPath::new(&g, vec![4, 5]).unwrap(),
        };
        expected.validate(&g).unwrap();
        assert_eq!(two_join_from_side(&g, s(&[0, 1, 2, 3])), Some(expected.clone()));
        let all = all_two_joins(&g).unwrap();
        assert!(all.contains(&expected));
        let first = find_two_join(&g).unwrap().unwrap();
        first.validate(&g).unwrap();
    }

    #[test]
    fn cycles_and_cliques_have_none() {
        assert!(find_two_join(&Graph::cycle(7).unwrap()).unwrap().is_none());
        assert!(find_two_join(&Graph::complete(5).unwrap()).unwrap().is_none());
    }

    #[test]
    fn size_bound() {
        assert!(matches!(find_two_join(&Graph::cycle(17).unwrap()), Err(DetectError::TooLarge { .. })));
    }

    #[test]
    fn validation_rejects_bad_marker() {
        let g = seven();
        let mut tj = two_join_from_side(&g, VertexSet::from_iter([0, 1, 2, 3])).unwrap();
        tj.m2 = InducedPath::new(&g, vec![4, 6, 5]).unwrap_or_else(|_| InducedPath::new_unchecked(vec![4, 6, 5]));
        assert!(tj.validate(&g).is_err());
    }

    #[test]
    fn swapped_and_mirrored_stay_valid() {
        let g = seven();
        let tj = find_two_join(&g).unwrap().unwrap();
        tj.swapped().validate(&g).unwrap();
        tj.mirrored().validate(&g).unwrap();
    }
}
