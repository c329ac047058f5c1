//! Subset-enumeration references for small graphs. Deliberately naive:
//! nothing here calls the library's detectors, so agreement is evidence.
#![allow(dead_code)]

use chordcover::{ChordalCover, Graph, VertexSet};

fn nbrs(g: &Graph, v: usize, s: u64) -> u64 {
    g.rows()[v] & s
}

fn bits(s: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| s >> i & 1 == 1)
}

fn connected(g: &Graph, s: u64) -> bool {
    if s == 0 {
        return true;
    }
    let mut seen = 1u64 << s.trailing_zeros();
    loop {
        let grown = bits(seen).fold(seen, |acc, v| acc | nbrs(g, v, s));
        if grown == seen {
            return seen == s;
        }
        seen = grown;
    }
}

/// Every hole as a vertex mask: connected, at least four vertices, every
/// vertex with exactly two neighbours inside.
pub fn holes(g: &Graph) -> Vec<u64> {
    holes_within(g, (1u64 << g.n()) - 1)
}

fn holes_within(g: &Graph, within: u64) -> Vec<u64> {
    assert!(g.n() <= 16, "subset enumeration is for small graphs");
    let mut out = Vec::new();
    let mut s = within;
    while s != 0 {
        if s.count_ones() >= 4 && bits(s).all(|v| nbrs(g, v, s).count_ones() == 2) && connected(g, s) {
            out.push(s);
        }
        s = (s - 1) & within;
    }
    out
}

pub fn chordal(g: &Graph, s: VertexSet) -> bool {
    holes_within(g, s.iter().fold(0u64, |acc, v| acc | 1 << v)).is_empty()
}

pub fn has_even_hole(g: &Graph) -> bool {
    holes(g).iter().any(|h| h.count_ones() % 2 == 0)
}

/// `(hole, centre, spokes)` for every wheel.
pub fn wheels(g: &Graph) -> Vec<(u64, usize, u64)> {
    let mut out = Vec::new();
    for h in holes(g) {
        for c in 0..g.n() {
            let spokes = nbrs(g, c, h);
            if h >> c & 1 == 0 && spokes.count_ones() >= 3 {
                out.push((h, c, spokes));
            }
        }
    }
    out
}

/// Spokes covering the hole, or inducing a connected proper part of it
/// (which on a cycle is a single arc).
pub fn has_sector_wheel(g: &Graph) -> bool {
    wheels(g).into_iter().any(|(h, _, s)| s == h || connected(g, s))
}

pub fn has_even_wheel(g: &Graph) -> bool {
    wheels(g).into_iter().any(|(_, _, s)| s.count_ones() % 2 == 0)
}

pub fn in_class(g: &Graph) -> bool {
    !has_even_hole(g) && !has_sector_wheel(g)
}

/// Some `C` with `v ∈ C ⊆ N[v]` whose removal disconnects the rest.
pub fn has_star_cutset(g: &Graph) -> bool {
    let all = (1u64 << g.n()) - 1;
    (0..g.n()).any(|v| {
        let nb = nbrs(g, v, all);
        let mut sub = nb;
        loop {
            let rest = all & !(sub | 1 << v);
            if rest != 0 && !connected(g, rest) {
                return true;
            }
            if sub == 0 {
                return false;
            }
            sub = (sub - 1) & nb;
        }
    })
}

/// The sides cover the graph and are both chordal; with `path`, they also
/// meet exactly in it.
pub fn is_cover(g: &Graph, c: &ChordalCover, path: Option<VertexSet>) -> bool {
    (c.x1 | c.x2) == g.vertices()
        && path.is_none_or(|p| c.x1 & c.x2 == p)
        && chordal(g, c.x1)
        && chordal(g, c.x2)
}

/// Induced paths as vertex sequences, each once (smaller end first).
pub fn induced_paths(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn grow(g: &Graph, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *cur.last().unwrap();
        if cur.len() == 1 || cur[0] < last {
            out.push(cur.clone());
        }
        let body = cur[..cur.len() - 1].iter().fold(0u64, |acc, &v| acc | 1 << v);
        for u in 0..g.n() {
            if g.has_edge(last, u) && !cur.contains(&u) && g.rows()[u] & body == 0 {
                cur.push(u);
                grow(g, cur, out);
                cur.pop();
            }
        }
    }
    for v in 0..g.n() {
        grow(g, &mut vec![v], &mut out);
    }
    out
}

pub fn is_flat(g: &Graph, p: &[usize]) -> bool {
    p.len() < 3 || p[1..p.len() - 1].iter().all(|&v| g.degree(v) == 2)
}
