//! Whole-graph shapes: extended basic graphs `B(T)`, pyramids, and the
//! nearly simplicial vertex test.

use serde::{Deserialize, Serialize};

use super::cutset::maximal_cliques;
use super::DetectError;
use crate::corpus::{build_bt, BtLabel, Tree};
use crate::graph::{Graph, InducedPath, VertexSet};

pub const BASIC_LIMIT: usize = 16;

/// A tree `T` with `g ≅ B(T)`; `vertex_map[v]` names the `B(T)` vertex that
/// graph vertex `v` plays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicRealization {
    pub tree: Tree,
    pub vertex_map: Vec<BtLabel>,
}

impl BasicRealization {
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let bt = build_bt(&self.tree).map_err(|e| e.to_string())?;
        if !bt.nontrivial {
            return Err("tree needs at least three leaves and two non-leaves".into());
        }
        if self.vertex_map.len() != g.n() || bt.graph.n() != g.n() {
            return Err("vertex count mismatch".into());
        }
        let mut image = Vec::with_capacity(g.n());
        for label in &self.vertex_map {
            let idx = bt.labels.iter().position(|l| l == label).ok_or("label not in B(T)")?;
            image.push(idx);
        }
        let mut hit = VertexSet::EMPTY;
        for &i in &image {
            hit.insert(i);
        }
        if hit.len() != g.n() {
            return Err("vertex map is not a bijection".into());
        }
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                if g.has_edge(u, v) != bt.graph.has_edge(image[u], image[v]) {
                    return Err(format!("adjacency of {u},{v} differs from B(T)"));
                }
            }
        }
        Ok(())
    }
}

/// Tries every adjacent pair as `(x1, x2)`; the rest must be the line graph
/// of a tree, whose internal nodes are the maximal cliques.
pub fn recognize_basic(g: &Graph) -> Result<Option<BasicRealization>, DetectError> {
    if g.n() > BASIC_LIMIT {
        return Err(DetectError::TooLarge { n: g.n(), limit: BASIC_LIMIT });
    }
    // A nontrivial tree has at least five nodes, so four edges.
    if g.n() < 6 {
        return Ok(None);
    }
    for (p, q) in g.edges() {
        for (x1, x2) in [(p, q), (q, p)] {
            if let Some(r) = realize_with(g, x1, x2) {
                return Ok(Some(r));
            }
        }
    }
    Ok(None)
}

fn realize_with(g: &Graph, x1: usize, x2: usize) -> Option<BasicRealization> {
    let h = g.vertices().without(x1).without(x2);
    if !g.is_connected_within(h) {
        return None;
    }
    let cliques = maximal_cliques(g, h);
    let hv: Vec<usize> = h.to_vec();
    let mut nodes = cliques.len();
    let mut edges = Vec::with_capacity(hv.len());
    for &e in &hv {
        let mine: Vec<usize> = (0..cliques.len()).filter(|&i| cliques[i].contains(e)).collect();
        match *mine.as_slice() {
            [i] => {
                edges.push((i, nodes));
                nodes += 1;
            }
            [i, j] => edges.push((i, j)),
            _ => return None,
        }
    }
    let tree = Tree::new(nodes, edges).ok()?;
    let mut vertex_map = vec![BtLabel::X1; g.n()];
    for (i, &e) in hv.iter().enumerate() {
        let (a, b) = tree.edges()[i];
        vertex_map[e] = BtLabel::Edge(a, b);
    }
    vertex_map[x2] = BtLabel::X2;
    let r = BasicRealization { tree, vertex_map };
    r.validate(g).ok().map(|_| r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PyramidWitness {
    pub apex: usize,
    pub base: [usize; 3],
    /// `paths[i]` runs from the apex to `base[i]`.
    pub paths: [InducedPath; 3],
}

impl PyramidWitness {
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let mut seen = VertexSet::singleton(self.apex);
        let mut expect = Vec::new();
        let mut ones = 0;
        for (i, p) in self.paths.iter().enumerate() {
            if p.first() != self.apex || p.last() != self.base[i] || p.vertex_count() < 2 {
                return Err(format!("path {i} does not run from the apex to its base vertex"));
            }
            ones += (p.len() == 1) as usize;
            for w in p.verts().windows(2) {
                expect.push((w[0].min(w[1]), w[0].max(w[1])));
            }
            let rest = p.vertex_set().without(self.apex);
            if rest.intersects(seen) {
                return Err("paths are not internally disjoint".into());
            }
            seen |= rest;
        }
        if ones > 1 {
            return Err("more than one path of length one".into());
        }
        if seen != g.vertices() {
            return Err("pyramid does not span the graph".into());
        }
        let [b1, b2, b3] = self.base;
        expect.extend([(b1.min(b2), b1.max(b2)), (b2.min(b3), b2.max(b3)), (b1.min(b3), b1.max(b3))]);
        expect.sort();
        expect.dedup();
        let actual: Vec<(usize, usize)> = g.edges().collect();
        if expect != actual {
            return Err("edge set differs from the pyramid".into());
        }
        Ok(())
    }
}

/// A witness if `g` is exactly a pyramid.
pub fn is_pyramid(g: &Graph) -> Option<PyramidWitness> {
    let n = g.n();
    if n < 5 || g.edge_count() != n + 2 {
        return None;
    }
    let cubic: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 3).collect();
    if cubic.len() != 4 || (0..n).any(|v| g.degree(v) != 2 && g.degree(v) != 3) {
        return None;
    }
    for &apex in &cubic {
        let mut paths = Vec::with_capacity(3);
        for start in g.neighbors(apex) {
            let mut verts = vec![apex, start];
            let (mut prev, mut cur) = (apex, start);
            while g.degree(cur) == 2 {
                let next = g.neighbors(cur).without(prev).first().expect("degree two");
                if next == apex {
                    break;
                }
                verts.push(next);
                prev = cur;
                cur = next;
            }
            paths.push(InducedPath::new_unchecked(verts));
        }
        let base = [paths[0].last(), paths[1].last(), paths[2].last()];
        let w = PyramidWitness {
            apex,
            base,
            paths: [paths[0].clone(), paths[1].clone(), paths[2].clone()],
        };
        if w.validate(g).is_ok() {
            return Some(w);
        }
    }
    None
}

/// Whether `N(v)` is a clique plus at most one further vertex.
pub fn is_nearly_simplicial(g: &Graph, v: usize) -> bool {
    let nv = g.neighbors(v);
    g.is_clique(nv) || nv.iter().any(|u| g.is_clique(nv.without(u)))
}

pub fn nearly_simplicial_vertices(g: &Graph) -> VertexSet {
    (0..g.n()).filter(|&v| is_nearly_simplicial(g, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::gen_pyramid;

    fn pendant_path_tree() -> Tree {
        Tree::new(5, vec![(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap()
    }

    #[test]
    fn basic_roundtrip() {
        let bt = build_bt(&pendant_path_tree()).unwrap();
        let r = recognize_basic(&bt.graph).unwrap().expect("B(T) is basic");
        r.validate(&bt.graph).unwrap();
        assert_eq!(r.tree.canonical_code(), pendant_path_tree().canonical_code());
    }

    #[test]
    fn basic_roundtrip_relabelled() {
        let bt = build_bt(&pendant_path_tree()).unwrap();
        let g = bt.graph.permuted(&[5, 2, 0, 4, 1, 3]);
        recognize_basic(&g).unwrap().expect("relabelled B(T) is basic").validate(&g).unwrap();
    }

    #[test]
    fn cycles_and_cliques_are_not_basic() {
        assert!(recognize_basic(&Graph::cycle(6).unwrap()).unwrap().is_none());
        assert!(recognize_basic(&Graph::complete(5).unwrap()).unwrap().is_none());
    }

    #[test]
    fn pyramid_roundtrip() {
        let g = gen_pyramid(1, 3, 3).unwrap();
        let w = is_pyramid(&g).unwrap();
        w.validate(&g).unwrap();
        assert_eq!(w.apex, 0);
        let extra = g.with_isolated_vertex().unwrap();
        assert!(is_pyramid(&extra).is_none());
        assert!(is_pyramid(&Graph::complete(4).unwrap()).is_none());
    }

    #[test]
    fn nearly_simplicial_examples() {
        let bt = build_bt(&pendant_path_tree()).unwrap();
        // Tree edge 0 is t1t2 ("e12").
        assert!(nearly_simplicial_vertices(&bt.graph).contains(0));
        let claw = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!nearly_simplicial_vertices(&claw).contains(0));
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(nearly_simplicial_vertices(&k4), k4.vertices());
    }
}
