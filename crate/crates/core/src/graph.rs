//! Immutable simple graphs over word-packed vertex sets.
//!
//! Vertex ids are positional (`0..n`) and every set of vertices is a single
//! `u64`, which caps graphs at [`MAX_VERTICES`]. All operations are pure.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graphs are limited to {MAX_VERTICES} vertices (got {0})")]
    TooManyVertices(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {0} repeated")]
    RepeatedVertex(usize),
    #[error("not an induced path: {0}")]
    NotInducedPath(String),
    #[error("not a hole: {0}")]
    NotAHole(String),
}

/// A set of vertex ids packed into one machine word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1u64 << v)
    }

    /// `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && (self.0 >> v) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1u64 << v))
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Complement relative to `{0, .., n-1}`.
    #[inline]
    pub fn complement(self, n: usize) -> Self {
        VertexSet(!self.0 & Self::full(n).0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Smallest member.
    #[inline]
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Members in ascending order.
    #[inline]
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Largest member plus one (0 for the empty set).
    pub fn bound(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl BitOrAssign for VertexSet {
    fn bitor_assign(&mut self, rhs: Self) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl BitAndAssign for VertexSet {
    fn bitand_assign(&mut self, rhs: Self) {
        self.0 &= rhs.0;
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

impl SubAssign for VertexSet {
    fn sub_assign(&mut self, rhs: Self) {
        self.0 &= !rhs.0;
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> Self {
        VertexSet(!self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let ids = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = ids.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex id {bad} out of range")));
        }
        Ok(ids.into_iter().collect())
    }
}

/// Simple undirected graph with dense adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    /// Builds from adjacency rows; rows are symmetrized and diagonal bits rejected.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self, GraphError> {
        let n = rows.len();
        let mut g = Graph::empty(n)?;
        let mask = VertexSet::full(n).bits();
        for (u, row) in rows.into_iter().enumerate() {
            if row & !mask != 0 {
                return Err(GraphError::VertexOutOfRange { vertex: 63 - row.leading_zeros() as usize, n });
            }
            if (row >> u) & 1 == 1 {
                return Err(GraphError::SelfLoop(u));
            }
            for v in VertexSet::from_bits(row) {
                g.adj[u] |= 1 << v;
                g.adj[v] |= 1 << u;
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        let all = VertexSet::full(n).bits();
        for v in 0..n {
            g.adj[v] = all & !(1 << v);
        }
        Ok(g)
    }

    /// The cycle `0-1-..-(n-1)-0`; `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v] | (1 << v))
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.adj[u] >> v) & 1 == 1
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            VertexSet(self.adj[u] & !((2u64 << u) - 1)).iter().map(move |v| (u, v))
        })
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn check_set(&self, s: VertexSet) -> Result<(), GraphError> {
        let extra = s - self.vertices();
        match extra.first() {
            None => Ok(()),
            Some(v) => Err(GraphError::VertexOutOfRange { vertex: v, n: self.n }),
        }
    }

    /// `N[S]`: `S` together with every vertex that has a neighbor in `S`.
    pub fn closed_neighborhood(&self, s: VertexSet) -> Result<VertexSet, GraphError> {
        self.check_set(s)?;
        Ok(self.closed_nbhd(s))
    }

    #[inline]
    pub(crate) fn closed_nbhd(&self, s: VertexSet) -> VertexSet {
        let mut out = s.bits();
        for v in s {
            out |= self.adj[v];
        }
        VertexSet(out)
    }

    /// `N(S) = N[S] \ S`.
    #[inline]
    pub fn open_nbhd(&self, s: VertexSet) -> VertexSet {
        self.closed_nbhd(s) - s
    }

    /// Vertices of `within` adjacent to every vertex of `s`.
    pub fn common_neighbors(&self, s: VertexSet, within: VertexSet) -> VertexSet {
        let mut out = within;
        for v in s {
            out &= self.neighbors(v);
        }
        out
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| (s.without(v)).is_subset(self.neighbors(v)))
    }

    /// Whether no edge joins `a` and `b`.
    pub fn anticomplete(&self, a: VertexSet, b: VertexSet) -> bool {
        !self.open_nbhd(a).intersects(b) && !a.intersects(b)
    }

    /// Connected components of `G[within]`, ordered by minimum vertex id.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(s) = rest.first() {
            let comp = self.component_of(s, within);
            rest -= comp;
            out.push(comp);
        }
        out
    }

    /// The component of `G[within]` containing `start`.
    pub fn component_of(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next |= self.neighbors(v);
            }
            next = (next & within) - seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn is_connected_within(&self, within: VertexSet) -> bool {
        match within.first() {
            None => true,
            Some(s) => self.component_of(s, within) == within,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertices())
    }

    /// Components of `G \ removed`, ordered by minimum vertex id.
    pub fn components_after_removal(&self, removed: VertexSet) -> Result<Vec<VertexSet>, GraphError> {
        self.check_set(removed)?;
        Ok(self.components_within(self.vertices() - removed))
    }

    /// Shortest path from `from` to `to` inside `G[within]`, minimum-id
    /// neighbours first. Both ends must lie in `within`.
    pub fn shortest_path_within(&self, from: usize, to: usize, within: VertexSet) -> Option<Vec<usize>> {
        if !within.contains(from) || !within.contains(to) {
            return None;
        }
        let mut parent = [usize::MAX; MAX_VERTICES];
        let mut seen = VertexSet::singleton(from);
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for w in (self.neighbors(v) & within) - seen {
                seen.insert(w);
                parent[w] = v;
                queue.push_back(w);
            }
        }
        None
    }

    /// `G[s]` with its vertices renumbered in ascending order; the returned
    /// table maps new ids to ids of `self`.
    pub fn induced(&self, s: VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = s.iter().collect();
        let mut inverse = [usize::MAX; MAX_VERTICES];
        for (i, &v) in map.iter().enumerate() {
            inverse[v] = i;
        }
        let adj = map
            .iter()
            .map(|&v| {
                let mut row = 0u64;
                for w in self.neighbors(v) & s {
                    row |= 1 << inverse[w];
                }
                row
            })
            .collect();
        (Graph { n: map.len(), adj }, map)
    }

    /// Adds an isolated vertex.
    pub fn with_isolated_vertex(&self) -> Result<Graph, GraphError> {
        if self.n + 1 > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(self.n + 1));
        }
        let mut adj = self.adj.clone();
        adj.push(0);
        Ok(Graph { n: self.n + 1, adj })
    }

    /// Graph with vertex `v` of `self` renamed `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![0u64; self.n];
        for (u, v) in self.edges() {
            adj[perm[u]] |= 1 << perm[v];
            adj[perm[v]] |= 1 << perm[u];
        }
        Graph { n: self.n, adj }
    }
}

/// Maps a set of local ids through an id table.
pub fn lift_set(s: VertexSet, map: &[usize]) -> VertexSet {
    s.iter().map(|v| map[v]).collect()
}

/// Maps a set of parent ids into the local ids of an induced subgraph; parent
/// ids outside the subgraph are dropped.
pub fn restrict_set(s: VertexSet, map: &[usize]) -> VertexSet {
    map.iter()
        .enumerate()
        .filter(|(_, &v)| s.contains(v))
        .map(|(i, _)| i)
        .collect()
}

/// An induced path, stored in order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InducedPath {
    verts: Vec<usize>,
}

impl InducedPath {
    pub fn new(g: &Graph, verts: Vec<usize>) -> Result<Self, GraphError> {
        validate_path(g, &verts)?;
        Ok(InducedPath { verts })
    }

    pub(crate) fn new_unchecked(verts: Vec<usize>) -> Self {
        InducedPath { verts }
    }

    pub fn single(v: usize) -> Self {
        InducedPath { verts: vec![v] }
    }

    pub fn verts(&self) -> &[usize] {
        &self.verts
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    /// Length in edges.
    pub fn len(&self) -> usize {
        self.verts.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn first(&self) -> usize {
        self.verts[0]
    }

    pub fn last(&self) -> usize {
        *self.verts.last().expect("non-empty path")
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.verts.iter().collect()
    }

    /// Every vertex but the two ends; empty for paths of one or two vertices.
    pub fn interior(&self) -> VertexSet {
        if self.verts.len() <= 2 {
            VertexSet::EMPTY
        } else {
            self.verts[1..self.verts.len() - 1].iter().collect()
        }
    }

    pub fn reversed(&self) -> Self {
        let mut verts = self.verts.clone();
        verts.reverse();
        InducedPath { verts }
    }

    /// Checks the path is induced in `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), GraphError> {
        validate_path(g, &self.verts)
    }

    pub fn map(&self, table: &[usize]) -> InducedPath {
        InducedPath { verts: self.verts.iter().map(|&v| table[v]).collect() }
    }
}

fn validate_path(g: &Graph, verts: &[usize]) -> Result<(), GraphError> {
    if verts.is_empty() {
        return Err(GraphError::NotInducedPath("empty".into()));
    }
    let mut seen = VertexSet::EMPTY;
    for &v in verts {
        g.check_vertex(v)?;
        if seen.contains(v) {
            return Err(GraphError::RepeatedVertex(v));
        }
        seen.insert(v);
    }
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            let adjacent = g.has_edge(verts[i], verts[j]);
            if j == i + 1 && !adjacent {
                return Err(GraphError::NotInducedPath(format!("{} and {} are not adjacent", verts[i], verts[j])));
            }
            if j > i + 1 && adjacent {
                return Err(GraphError::NotInducedPath(format!("chord {}-{}", verts[i], verts[j])));
            }
        }
    }
    Ok(())
}

/// An induced cycle on at least four vertices, stored in cyclic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Hole {
    verts: Vec<usize>,
}

impl Hole {
    pub fn new(g: &Graph, verts: Vec<usize>) -> Result<Self, GraphError> {
        validate_hole(g, &verts)?;
        Ok(Hole { verts })
    }

    pub(crate) fn new_unchecked(verts: Vec<usize>) -> Self {
        Hole { verts }
    }

    pub fn verts(&self) -> &[usize] {
        &self.verts
    }

    /// Length in edges, equal to the vertex count.
    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.verts.iter().collect()
    }

    pub fn validate(&self, g: &Graph) -> Result<(), GraphError> {
        validate_hole(g, &self.verts)
    }

    pub fn map(&self, table: &[usize]) -> Hole {
        Hole { verts: self.verts.iter().map(|&v| table[v]).collect() }
    }

    /// Position of `v` in the cyclic order.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.verts.iter().position(|&x| x == v)
    }
}

fn write_dashed(f: &mut fmt::Formatter<'_>, verts: &[usize]) -> fmt::Result {
    for (i, v) in verts.iter().enumerate() {
        if i > 0 {
            f.write_str("-")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

impl fmt::Display for InducedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_dashed(f, &self.verts)
    }
}

impl fmt::Display for Hole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_dashed(f, &self.verts)?;
        write!(f, "-{}", self.verts[0])
    }
}

fn validate_hole(g: &Graph, verts: &[usize]) -> Result<(), GraphError> {
    let k = verts.len();
    if k < 4 {
        return Err(GraphError::NotAHole(format!("length {k} < 4")));
    }
    let mut seen = VertexSet::EMPTY;
    for &v in verts {
        g.check_vertex(v)?;
        if seen.contains(v) {
            return Err(GraphError::RepeatedVertex(v));
        }
        seen.insert(v);
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if consecutive != g.has_edge(verts[i], verts[j]) {
                return Err(GraphError::NotAHole(format!(
                    "pair {}-{} {}",
                    verts[i],
                    verts[j],
                    if consecutive { "not adjacent" } else { "is a chord" }
                )));
            }
        }
    }
    Ok(())
}

/// Whether every interior vertex of `p` has degree exactly two in `g`.
pub fn is_flat_path(g: &Graph, p: &InducedPath) -> Result<bool, GraphError> {
    p.validate(g)?;
    Ok(p.interior().iter().all(|v| g.degree(v) == 2))
}
