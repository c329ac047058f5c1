//! Graph I/O and generators: graph6, named graphs, trees and their `B(T)`
//! graphs, pyramids, connected-graph enumeration, DOT export.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::BufRead;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("graph6: empty input")]
    Empty,
    #[error("graph6: malformed length header")]
    BadHeader,
    #[error("graph6: byte {byte:#04x} at offset {offset} outside 63..=126")]
    BadChar { offset: usize, byte: u8 },
    #[error("graph6: expected {expected} data bytes, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("graph6: padding bits in the last byte are not zero")]
    TrailingBits,
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("pyramid path lengths {0:?} invalid: {1}")]
    BadPyramid([usize; 3], &'static str),
    #[error("unknown named graph `{0}`")]
    UnknownName(String),
    #[error("tree size {0} outside 1..=12")]
    TreeSize(usize),
    #[error("bad tree spec `{0}`")]
    BadTreeSpec(String),
    #[error("read error: {0}")]
    Io(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

// ---------------------------------------------------------------- graph6

/// Decodes one graph6 line (an optional `>>graph6<<` prefix is accepted).
pub fn parse_graph6(text: &str) -> Result<Graph, CorpusError> {
    let text = text.trim_end_matches(['\n', '\r']);
    let bytes = text.strip_prefix(">>graph6<<").unwrap_or(text).as_bytes();
    if bytes.is_empty() {
        return Err(CorpusError::Empty);
    }
    for (offset, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(CorpusError::BadChar { offset, byte: b });
        }
    }
    let (n, data) = if bytes[0] != 126 {
        (bytes[0] as usize - 63, &bytes[1..])
    } else if bytes.len() >= 4 && bytes[1] != 126 {
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b as usize - 63));
        if n < 63 {
            return Err(CorpusError::BadHeader);
        }
        (n, &bytes[4..])
    } else {
        return Err(CorpusError::BadHeader);
    };
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n).into());
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if data.len() != expected {
        return Err(CorpusError::WrongLength { expected, found: data.len() });
    }
    let pad = expected * 6 - bits;
    if pad > 0 && (data[expected - 1] - 63) & ((1u8 << pad) - 1) != 0 {
        return Err(CorpusError::TrailingBits);
    }
    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let chunk = data[k / 6] - 63;
            if (chunk >> (5 - k % 6)) & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Ok(Graph::from_rows(rows)?)
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + n * n / 12);
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = (chunk << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(chunk + 63);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((chunk << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Reads a graph6 stream, one graph per line; blank lines are skipped.
/// Items carry their 1-based line number.
pub fn read_graph6_lines<R: BufRead>(reader: R) -> impl Iterator<Item = (usize, Result<Graph, CorpusError>)> {
    reader.lines().enumerate().filter_map(|(i, line)| match line {
        Ok(l) if l.trim().is_empty() => None,
        Ok(l) => Some((i + 1, parse_graph6(l.trim()))),
        Err(e) => Some((i + 1, Err(CorpusError::Io(e.to_string())))),
    })
}

/// The vendored corpus: every connected graph on 2 to 8 vertices, one per
/// line, ordered by vertex count then graph6 text.
pub const CONNECTED_UPTO_8: &str = include_str!("../data/connected_2_8.g6");

pub fn vendored_corpus() -> impl Iterator<Item = Graph> {
    CONNECTED_UPTO_8
        .lines()
        .filter(|l| !l.is_empty())
        .map(|l| parse_graph6(l).expect("vendored corpus is valid graph6"))
}

// ---------------------------------------------------------------- named graphs

/// Vertex names of [`figure1`], indexed by id.
pub const FIGURE1_LABELS: [&str; 10] = ["x", "y1", "y2", "y3", "y4", "y5", "y6", "z1", "z2", "z3"];

/// Ten-vertex even-hole-free graph with a vertex `x` (id 0) adjacent to
/// `y1..y6` (ids 1..=6), pairs `y1y2`, `y3y4`, `y5y6`, and a triangle
/// `z1z2z3` (ids 7..=9) with `z_i` adjacent to the `i`-th pair.
pub fn figure1() -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..=6).map(|y| (0, y)).collect();
    edges.extend([(1, 2), (3, 4), (5, 6)]);
    edges.extend([(7, 1), (7, 2), (8, 3), (8, 4), (9, 5), (9, 6)]);
    edges.extend([(7, 8), (8, 9), (7, 9)]);
    Graph::from_edges(10, edges).expect("static graph")
}

/// Looks up a graph by name. Recognized: `figure1`, `butterfly`,
/// `cycle(k)`, `clique(k)`, `path(k)`, `pyramid(a,b,c)`, `wheel(k)`.
pub fn named_graph(name: &str) -> Result<Graph, CorpusError> {
    let unknown = || CorpusError::UnknownName(name.to_string());
    let name = name.trim();
    match name {
        "figure1" => return Ok(figure1()),
        "butterfly" => {
            return Ok(Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])?);
        }
        _ => {}
    }
    let (head, args) = name
        .strip_suffix(')')
        .and_then(|s| s.split_once('('))
        .ok_or_else(unknown)?;
    let args: Vec<usize> = args
        .split(',')
        .map(|a| a.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| unknown())?;
    match (head, args.as_slice()) {
        ("cycle", &[k]) if k >= 3 => Ok(Graph::cycle(k)?),
        ("clique", &[k]) => Ok(Graph::complete(k)?),
        ("path", &[k]) => Ok(Graph::path(k)?),
        ("pyramid", &[a, b, c]) => gen_pyramid(a, b, c),
        ("wheel", &[k]) if k >= 4 => {
            let mut edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
            edges.extend((0..k).map(|i| (i, k)));
            Ok(Graph::from_edges(k + 1, edges)?)
        }
        _ => Err(unknown()),
    }
}

// ---------------------------------------------------------------- pyramids

/// Pyramid with apex 0 and three paths of the given lengths; the path to
/// `b_i` occupies the next `l_i` ids and ends at `b_i`.
pub fn gen_pyramid(l1: usize, l2: usize, l3: usize) -> Result<Graph, CorpusError> {
    let lens = [l1, l2, l3];
    if lens.contains(&0) {
        return Err(CorpusError::BadPyramid(lens, "every path needs length at least one"));
    }
    if lens.iter().filter(|&&l| l == 1).count() > 1 {
        return Err(CorpusError::BadPyramid(lens, "at most one path may have length one"));
    }
    let n = 1 + l1 + l2 + l3;
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n).into());
    }
    let mut edges = Vec::new();
    let mut base = [0usize; 3];
    let mut next = 1;
    for (i, &l) in lens.iter().enumerate() {
        let mut prev = 0;
        for _ in 0..l {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        base[i] = prev;
    }
    edges.extend([(base[0], base[1]), (base[1], base[2]), (base[0], base[2])]);
    Ok(Graph::from_edges(n, edges)?)
}

// ---------------------------------------------------------------- trees

/// A tree with its bipartition taken by depth parity from node 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tree {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Tree {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, CorpusError> {
        if n == 0 {
            return Err(CorpusError::NotATree("no nodes".into()));
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n).into());
        }
        if edges.len() != n - 1 {
            return Err(CorpusError::NotATree(format!("{} edges on {} nodes", edges.len(), n)));
        }
        let g = Graph::from_edges(n, edges.iter().copied())?;
        if g.edge_count() != n - 1 {
            return Err(CorpusError::NotATree("repeated edge".into()));
        }
        if !g.is_connected() {
            return Err(CorpusError::NotATree("disconnected".into()));
        }
        Ok(Tree { n, edges })
    }

    /// Parses `"0-1,1-2,1-3"`; the node count is one more than the edge count.
    pub fn parse(spec: &str) -> Result<Self, CorpusError> {
        let bad = || CorpusError::BadTreeSpec(spec.to_string());
        let spec = spec.trim();
        if spec.is_empty() {
            return Tree::new(1, Vec::new());
        }
        let edges = spec
            .split(',')
            .map(|e| {
                let (a, b) = e.split_once('-').ok_or_else(bad)?;
                let a = a.trim().parse::<usize>().map_err(|_| bad())?;
                let b = b.trim().parse::<usize>().map_err(|_| bad())?;
                Ok((a, b))
            })
            .collect::<Result<Vec<_>, CorpusError>>()?;
        Tree::new(edges.len() + 1, edges)
    }

    pub fn path(n: usize) -> Self {
        Tree::new(n, (1..n).map(|i| (i - 1, i)).collect()).expect("path is a tree")
    }

    pub fn star(leaves: usize) -> Self {
        Tree::new(leaves + 1, (1..=leaves).map(|i| (0, i)).collect()).expect("star is a tree")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn as_graph(&self) -> Graph {
        Graph::from_edges(self.n, self.edges.iter().copied()).expect("validated tree")
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn leaves(&self) -> VertexSet {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Nodes at even depth from node 0.
    pub fn side1(&self) -> VertexSet {
        let g = self.as_graph();
        let mut side = VertexSet::singleton(0);
        let mut frontier = side;
        let mut seen = side;
        let mut even = true;
        while !frontier.is_empty() {
            let next = g.open_nbhd(frontier) - seen;
            seen |= next;
            even = !even;
            if even {
                side |= next;
            }
            frontier = next;
        }
        side
    }

    pub fn leaves_on_side(&self, first: bool) -> VertexSet {
        let s1 = self.side1();
        if first {
            self.leaves() & s1
        } else {
            self.leaves() - s1
        }
    }

    /// Index into [`Tree::edges`] of the edge at leaf `v`.
    pub fn pendant_edge(&self, v: usize) -> Option<usize> {
        if self.degree(v) != 1 {
            return None;
        }
        self.edges.iter().position(|&(a, b)| a == v || b == v)
    }

    pub fn is_nontrivial(&self) -> bool {
        let leaves = self.leaves().len();
        leaves >= 3 && self.n - leaves >= 2
    }

    /// Whether two leaves share their neighbour.
    pub fn has_sibling_leaves(&self) -> bool {
        let g = self.as_graph();
        (0..self.n).any(|v| (g.neighbors(v) & self.leaves()).len() >= 2)
    }

    /// Isomorphism-invariant string: AHU encoding from the centre, minimized
    /// over both centres when there are two.
    pub fn canonical_code(&self) -> String {
        let g = self.as_graph();
        tree_centers(&g).into_iter().map(|c| ahu(&g, c, usize::MAX)).min().expect("a tree has a centre")
    }
}

fn tree_centers(g: &Graph) -> Vec<usize> {
    let mut rest = g.vertices();
    while rest.len() > 2 {
        let leaves: VertexSet = rest.iter().filter(|&v| (g.neighbors(v) & rest).len() <= 1).collect();
        rest -= leaves;
    }
    rest.to_vec()
}

fn ahu(g: &Graph, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = g.neighbors(v).iter().filter(|&w| w != parent).map(|w| ahu(g, w, v)).collect();
    kids.sort();
    let mut s = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
    s.push('(');
    for k in kids {
        s.push_str(&k);
    }
    s.push(')');
    s
}

/// All trees on `n` nodes up to isomorphism, ordered by canonical code.
/// Each size is generated by attaching a leaf to every node of every tree
/// one size smaller and keeping one tree per canonical code.
pub fn enumerate_trees(n: usize) -> Result<Vec<Tree>, CorpusError> {
    if !(1..=12).contains(&n) {
        return Err(CorpusError::TreeSize(n));
    }
    let mut level: BTreeMap<String, Tree> = BTreeMap::new();
    let single = Tree::new(1, Vec::new())?;
    level.insert(single.canonical_code(), single);
    for size in 2..=n {
        let mut next = BTreeMap::new();
        for t in level.values() {
            for v in 0..size - 1 {
                let mut edges = t.edges.clone();
                edges.push((v, size - 1));
                let grown = Tree { n: size, edges };
                next.entry(grown.canonical_code()).or_insert(grown);
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}

// ---------------------------------------------------------------- B(T)

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BtLabel {
    Edge(usize, usize),
    X1,
    X2,
}

/// `B(T)` with its labelling: vertex `i < |E(T)|` is tree edge `i`, then
/// `x1`, then `x2`.
#[derive(Clone, Debug)]
pub struct BtGraph {
    pub graph: Graph,
    pub labels: Vec<BtLabel>,
    pub x1: usize,
    pub x2: usize,
    /// At least three leaves and at least two non-leaves.
    pub nontrivial: bool,
}

pub fn build_bt(t: &Tree) -> Result<BtGraph, CorpusError> {
    let m = t.edges.len();
    if m + 2 > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(m + 2).into());
    }
    let (x1, x2) = (m, m + 1);
    let mut edges = vec![(x1, x2)];
    for i in 0..m {
        let (a, b) = t.edges[i];
        for j in i + 1..m {
            let (c, d) = t.edges[j];
            if a == c || a == d || b == c || b == d {
                edges.push((i, j));
            }
        }
    }
    let s1 = t.side1();
    for leaf in t.leaves() {
        let e = t.pendant_edge(leaf).expect("leaf has a pendant edge");
        edges.push((e, if s1.contains(leaf) { x1 } else { x2 }));
    }
    let mut labels: Vec<BtLabel> = t.edges.iter().map(|&(a, b)| BtLabel::Edge(a, b)).collect();
    labels.extend([BtLabel::X1, BtLabel::X2]);
    // A one-edge tree has both leaves on the same edge; dedupe via from_edges.
    Ok(BtGraph { graph: Graph::from_edges(m + 2, edges)?, labels, x1, x2, nontrivial: t.is_nontrivial() })
}

// ---------------------------------------------------------------- enumeration

/// Canonical relabelling: the lexicographically largest adjacency matrix
/// over all labellings reachable by refinement and individualization.
pub fn canonical_form(g: &Graph) -> Graph {
    let n = g.n();
    if n <= 1 {
        return g.clone();
    }
    let mut best: Option<Vec<u64>> = None;
    let cells = refine(g, vec![g.vertices()]);
    search_canonical(g, cells, &mut best);
    let rows = best.expect("search visits at least one leaf");
    Graph::from_rows(rows).expect("relabelling preserves validity")
}

/// Equitable refinement of an ordered partition. Cells split by the number of
/// neighbours in each splitter cell; new cells keep a canonical order.
fn refine(g: &Graph, mut cells: Vec<VertexSet>) -> Vec<VertexSet> {
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter = cells[s];
            let mut next = Vec::with_capacity(cells.len());
            for &cell in &cells {
                if cell.len() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut groups: BTreeMap<usize, VertexSet> = BTreeMap::new();
                for v in cell {
                    groups.entry((g.neighbors(v) & splitter).len()).or_default().insert(v);
                }
                if groups.len() > 1 {
                    changed = true;
                }
                next.extend(groups.into_values());
            }
            cells = next;
            s += 1;
        }
        if !changed {
            return cells;
        }
    }
}

fn search_canonical(g: &Graph, cells: Vec<VertexSet>, best: &mut Option<Vec<u64>>) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c.first().expect("non-empty cell")).collect();
        let mut perm = vec![0usize; g.n()];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        let rows = g.permuted(&perm).rows().to_vec();
        if best.as_ref().is_none_or(|b| rows > *b) {
            *best = Some(rows);
        }
        return;
    };
    let cell = cells[target];
    let mut tried: Vec<usize> = Vec::new();
    for v in cell {
        // Twins inside one cell are exchanged by an automorphism fixing the
        // partition, so one representative per twin class suffices.
        if tried.iter().any(|&u| g.neighbors(u).without(v) == g.neighbors(v).without(u)) {
            continue;
        }
        tried.push(v);
        let mut split = cells.clone();
        split[target] = VertexSet::singleton(v);
        split.insert(target + 1, cell.without(v));
        search_canonical(g, refine(g, split), best);
    }
}

/// All connected graphs on `n` vertices up to isomorphism, in canonical
/// form, ordered by graph6 text. Built by adding a vertex with every
/// non-empty neighbour set to each graph one size smaller.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: BTreeMap<String, Graph> = BTreeMap::new();
    let k1 = Graph::empty(1).expect("one vertex");
    level.insert(write_graph6(&k1), k1);
    for size in 2..=n {
        let mut next = BTreeMap::new();
        for g in level.values() {
            let base = g.with_isolated_vertex().expect("size within bound");
            for mask in 1u64..(1 << (size - 1)) {
                let mut rows = base.rows().to_vec();
                rows[size - 1] = mask;
                let h = canonical_form(&Graph::from_rows(rows).expect("valid rows"));
                next.entry(write_graph6(&h)).or_insert(h);
            }
        }
        level = next;
    }
    level.into_values().collect()
}

// ---------------------------------------------------------------- DOT

/// DOT text for `g`. With `sides`, vertices only in the first set are drawn
/// blue, only in the second red, in both purple.
pub fn to_dot(g: &Graph, labels: Option<&[String]>, sides: Option<(VertexSet, VertexSet)>) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..g.n() {
        let label = labels.and_then(|l| l.get(v)).cloned().unwrap_or_else(|| v.to_string());
        let colour = sides.map(|(a, b)| match (a.contains(v), b.contains(v)) {
            (true, true) => "purple",
            (true, false) => "blue",
            (false, true) => "red",
            (false, false) => "black",
        });
        match colour {
            Some(c) => writeln!(out, "  {v} [label=\"{label}\", color={c}];"),
            None => writeln!(out, "  {v} [label=\"{label}\"];"),
        }
        .expect("writing to a String");
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").expect("writing to a String");
    }
    out.push_str("}\n");
    out
}

// ---------------------------------------------------------------- records

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordFlags {
    pub even_hole_free: bool,
    pub sector_wheel_free: bool,
    pub chordal: bool,
    pub has_star_cutset: bool,
    pub has_clique_cutset: bool,
    pub has_two_join: bool,
    pub is_basic: bool,
    pub is_pyramid: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverStatus {
    Covered,
    FallbackUsed,
    Failed,
    OutOfClass,
}

/// One line of a sweep report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusRecord {
    pub graph6: String,
    pub n: usize,
    pub flags: RecordFlags,
    pub cover_status: CoverStatus,
    /// Structural audits that fired on this graph; empty when all held.
    pub audit_failures: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decodes_k4() {
        let g = parse_graph6("C~").unwrap();
        assert_eq!(g, Graph::complete(4).unwrap());
        assert_eq!(write_graph6(&g), "C~");
    }

    #[test]
    fn decodes_single_vertex() {
        let g = parse_graph6("@").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn decodes_five_cycle() {
        let g = parse_graph6("Dhc").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 5);
        assert!((0..5).all(|v| g.degree(v) == 2));
        assert!(g.is_connected());
    }

    #[test]
    fn graph6_errors() {
        assert_eq!(parse_graph6(""), Err(CorpusError::Empty));
        assert!(matches!(parse_graph6("C~~"), Err(CorpusError::WrongLength { .. })));
        assert!(matches!(parse_graph6("C "), Err(CorpusError::BadChar { offset: 1, .. })));
        // n=3 uses 3 bits; a set low bit is padding.
        assert_eq!(parse_graph6("B@"), Err(CorpusError::TrailingBits));
        assert_eq!(parse_graph6("~~"), Err(CorpusError::BadHeader));
    }

    #[test]
    fn graph6_long_header_roundtrip() {
        let g = Graph::cycle(64).unwrap();
        let s = write_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn figure1_shape() {
        let g = figure1();
        assert_eq!(g.n(), 10);
        assert_eq!(g.edge_count(), 18);
        assert_eq!(g.closed_neighbors(0), VertexSet::full(7));
        assert_eq!(named_graph("figure1").unwrap(), g);
    }

    #[test]
    fn named_registry() {
        assert_eq!(named_graph("cycle(5)").unwrap(), Graph::cycle(5).unwrap());
        assert_eq!(named_graph("clique(4)").unwrap(), Graph::complete(4).unwrap());
        assert_eq!(named_graph("butterfly").unwrap().edge_count(), 6);
        assert!(matches!(named_graph("petersen"), Err(CorpusError::UnknownName(_))));
        assert!(named_graph("cycle(x)").is_err());
    }

    #[test]
    fn pyramid_sizes_and_rejections() {
        let g = gen_pyramid(1, 3, 3).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.edge_count(), 10);
        assert!(matches!(gen_pyramid(1, 1, 4), Err(CorpusError::BadPyramid(..))));
        assert!(matches!(gen_pyramid(0, 2, 2), Err(CorpusError::BadPyramid(..))));
    }

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| enumerate_trees(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
        assert!(enumerate_trees(0).is_err());
        assert!(enumerate_trees(13).is_err());
    }

    #[test]
    fn tree_validation() {
        assert!(Tree::new(3, vec![(0, 1)]).is_err());
        assert!(Tree::new(4, vec![(0, 1), (1, 0), (2, 3)]).is_err());
        assert!(Tree::parse("0-1,1-2").is_ok());
        assert!(Tree::parse("0-1,2-3,0-1").is_err());
        assert!(Tree::parse("0:1").is_err());
    }

    #[test]
    fn bt_of_path_is_cycle() {
        let bt = build_bt(&Tree::path(4)).unwrap();
        let g = &bt.graph;
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 5);
        assert!((0..5).all(|v| g.degree(v) == 2) && g.is_connected());
        assert!(!bt.nontrivial);
    }

    #[test]
    fn bt_of_star_is_clique_plus_pendant() {
        // Every leaf of a star sits on the same side, so the other `x` only
        // sees its partner.
        let bt = build_bt(&Tree::star(3)).unwrap();
        let g = &bt.graph;
        assert!(g.is_clique(g.vertices().without(bt.x1)));
        assert_eq!(g.neighbors(bt.x1), VertexSet::singleton(bt.x2));
        assert!(!bt.nontrivial);
    }

    #[test]
    fn bt_of_path_with_pendant() {
        // t1..t4 = 0..3, t5 = 4 on t2.
        let t = Tree::new(5, vec![(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        let bt = build_bt(&t).unwrap();
        let (e12, e23, e34, e25, x1, x2) = (0, 1, 2, 3, bt.x1, bt.x2);
        let want = Graph::from_edges(
            6,
            [(e12, e23), (e12, e25), (e23, e25), (e23, e34), (x1, e12), (x1, e25), (x2, e34), (x1, x2)],
        )
        .unwrap();
        assert_eq!(bt.graph, want);
        assert!(bt.nontrivial);
    }

    #[test]
    fn canonical_form_is_invariant() {
        let c5 = Graph::cycle(5).unwrap();
        let relabelled = c5.permuted(&[3, 0, 4, 1, 2]);
        assert_eq!(canonical_form(&c5), canonical_form(&relabelled));
        assert_ne!(canonical_form(&c5), canonical_form(&Graph::path(5).unwrap()));
    }

    #[test]
    fn connected_counts_small() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn dot_lists_every_edge() {
        let dot = to_dot(&Graph::cycle(4).unwrap(), None, None);
        assert_eq!(dot.matches(" -- ").count(), 4);
        assert!(dot.starts_with("graph G {"));
    }
}
