//! The recursive extension engine.
//!
//! `extend` takes an induced subgraph `G[s]` and a complete precover on it
//! and returns a cover extending it. The cases, in dispatch order:
//!
//! 1. `N[P] = s`: the precover already is a cover.
//! 2. A nearly simplicial vertex outside `N[P]` is peeled off and put back on
//!    the side away from its odd neighbour.
//! 3. Base shapes: chordal (including cliques), a hole, a pyramid.
//! 4. A clique cutset: either one component avoids the precover (extend the
//!    rest, then the component from a single vertex of the cutset) or every
//!    component meets it (split the path and extend both halves).
//! 5. Star-type cutsets: a universal vertex, a cutset anchored on the path
//!    with a component far from it, a full star `N[v]` with the two ways of
//!    re-solving one side around `v`, and the clique cutset `{v} ∪ B`
//!    derived from a star with one far component.
//! 6. A 2-join: complete precovers on the blocks, extend, glue.
//! 7. Exhaustive search, logged as a fallback.
//!
//! Every recursive call is on a strictly smaller vertex set, and every case
//! result is verified before it is accepted; a failed case is rolled back
//! and the next one is tried. A first pass runs without the fallback; only
//! if it fails does a second pass allow it.

use super::glue::glue_two_join_within;
use super::precover::complete_within;
use super::trace::{CoverTrace, StepKind, TraceStep};
use super::{verify_within, ChordalCover, ClassWitness, CoverError, GlueOrientation, Precover};
use crate::detect::{
    all_two_joins, anchored_candidates, clique_cutset, find_hole, find_wheel, has_star_cutset,
    is_chordal_set, is_pyramid, whole_graph_hole, Parity, TwoJoin, WheelKind, TWO_JOIN_LIMIT,
};
use crate::graph::{is_flat_path, lift_set, restrict_set, Graph, InducedPath, VertexSet};
use crate::oracle::{brute_force_extend, ORACLE_LIMIT};

/// Which extension property a call relies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtendMode {
    /// Paths with at most two vertices, any graph in the class.
    Weak,
    /// Flat paths of any length, graphs without a star cutset.
    Fpe,
}

/// Extends the complete precover `pc` to a chordal cover of `g`.
pub fn extend_cover(g: &Graph, pc: &Precover, mode: ExtendMode) -> Result<(ChordalCover, CoverTrace), CoverError> {
    extend_cover_with(g, pc, mode, EngineOptions::default())
}

pub fn extend_cover_with(
    g: &Graph,
    pc: &Precover,
    mode: ExtendMode,
    opts: EngineOptions,
) -> Result<(ChordalCover, CoverTrace), CoverError> {
    if !g.is_connected() {
        return Err(CoverError::Disconnected);
    }
    check_class(g)?;
    match mode {
        ExtendMode::Weak if pc.path.vertex_count() > 2 => {
            return Err(CoverError::Precondition("weak extension takes paths of at most two vertices".into()))
        }
        ExtendMode::Fpe if !is_flat_path(g, &pc.path)? => {
            return Err(CoverError::Precondition(format!("path {} is not flat", pc.path)))
        }
        ExtendMode::Fpe if has_star_cutset(g) => {
            return Err(CoverError::Precondition("graph has a star cutset".into()))
        }
        _ => {}
    }
    run(g, g.vertices(), pc, opts)
}

/// Switches for the engine. The defaults are what [`chordal_cover`] and
/// [`extend_cover`] use; turning peeling off forces the decomposition cases
/// on small graphs, where peeling would otherwise handle almost everything.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineOptions {
    pub peel: bool,
    /// Allow a second pass with exhaustive search at dead ends.
    pub fallback: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { peel: true, fallback: true }
    }
}

/// A cover of a connected graph with no even hole and no sector wheel,
/// extending `({v}, N[v], {v})` for the smallest vertex `v`.
pub fn chordal_cover(g: &Graph) -> Result<(ChordalCover, CoverTrace), CoverError> {
    chordal_cover_with(g, EngineOptions::default())
}

pub fn chordal_cover_with(g: &Graph, opts: EngineOptions) -> Result<(ChordalCover, CoverTrace), CoverError> {
    if g.n() == 0 {
        return Err(CoverError::Precondition("empty graph".into()));
    }
    if !g.is_connected() {
        return Err(CoverError::Disconnected);
    }
    check_class(g)?;
    let pc = Precover::at_vertex(g, 0)?;
    run(g, g.vertices(), &pc, opts)
}

/// Even hole first, then sector wheel.
pub(crate) fn check_class(g: &Graph) -> Result<(), CoverError> {
    if let Some(h) = find_hole(g, Parity::Even, 4, VertexSet::EMPTY) {
        return Err(CoverError::ClassViolation(ClassWitness::EvenHole(h)));
    }
    if let Some(w) = find_wheel(g, WheelKind::Sector) {
        return Err(CoverError::ClassViolation(ClassWitness::SectorWheel(w)));
    }
    Ok(())
}

/// Runs the engine on `G[s]`, first without and then with the fallback.
pub(crate) fn extend_within(g: &Graph, s: VertexSet, pc: &Precover) -> Result<(ChordalCover, CoverTrace), CoverError> {
    run(g, s, pc, EngineOptions::default())
}

fn run(g: &Graph, s: VertexSet, pc: &Precover, opts: EngineOptions) -> Result<(ChordalCover, CoverTrace), CoverError> {
    check_precover(g, s, pc)?;
    let mut strict = Engine { g, steps: Vec::new(), fallback: false, peel: opts.peel };
    let first = strict.extend(s, pc, 0);
    if first.is_ok() || !opts.fallback {
        return first.map(|c| (c, CoverTrace { steps: strict.steps }));
    }
    let mut lenient = Engine { g, steps: Vec::new(), fallback: true, peel: opts.peel };
    let c = lenient.extend(s, pc, 0)?;
    Ok((c, CoverTrace { steps: lenient.steps }))
}

fn check_precover(g: &Graph, s: VertexSet, pc: &Precover) -> Result<(), CoverError> {
    pc.check_partial(g, s)?;
    let np = g.closed_nbhd(pc.path_set()) & s;
    if pc.w1 | pc.w2 != np {
        return Err(CoverError::Precondition(format!("precover misses {} of N[P]", np - (pc.w1 | pc.w2))));
    }
    Ok(())
}

/// The vertices of `path` inside `keep`, if they form one contiguous run.
fn sub_path(path: &InducedPath, keep: VertexSet) -> Option<InducedPath> {
    let v = path.verts();
    let start = v.iter().position(|&x| keep.contains(x))?;
    let len = v[start..].iter().take_while(|&&x| keep.contains(x)).count();
    if v[start + len..].iter().any(|&x| keep.contains(x)) {
        return None;
    }
    Some(InducedPath::new_unchecked(v[start..start + len].to_vec()))
}

fn local_path(path: &InducedPath, map: &[usize]) -> InducedPath {
    InducedPath::new_unchecked(
        path.verts().iter().map(|&v| map.iter().position(|&m| m == v).expect("path inside subgraph")).collect(),
    )
}

/// Which of the four placements of the path relative to a 2-join applies.
enum JoinCase {
    /// Path starts in `Z1` and ends in `Z2`, crossing once through `A1`–`A2`.
    Crossing,
    /// Both ends in `Z1`, a middle stretch through `Z2`.
    Through,
    /// Inside `Z1`, meeting `A1` (and maybe `B1`).
    Touching,
    /// Inside `C1`.
    Inside,
}

struct Engine<'g> {
    g: &'g Graph,
    steps: Vec<TraceStep>,
    fallback: bool,
    peel: bool,
}

impl Engine<'_> {
    fn push(&mut self, step: StepKind, depth: usize, s: VertexSet, path: &InducedPath, pivot: VertexSet, c: ChordalCover) {
        self.steps.push(TraceStep {
            step,
            depth,
            vertices: s,
            path: path.verts().to_vec(),
            pivot,
            x1: c.x1,
            x2: c.x2,
        });
    }

    /// Runs one case; keeps its steps and records it only if the result
    /// verifies.
    fn attempt<F>(&mut self, kind: StepKind, depth: usize, s: VertexSet, pc: &Precover, pivot: VertexSet, f: F) -> Option<ChordalCover>
    where
        F: FnOnce(&mut Self) -> Result<ChordalCover, CoverError>,
    {
        let mark = self.steps.len();
        match f(self) {
            Ok(c) if verify_within(self.g, s, &c, Some(pc)).is_ok() => {
                self.push(kind, depth, s, &pc.path, pivot, c);
                Some(c)
            }
            _ => {
                self.steps.truncate(mark);
                None
            }
        }
    }

    fn nb(&self, v: usize, s: VertexSet) -> VertexSet {
        self.g.neighbors(v) & s
    }

    fn extend(&mut self, s: VertexSet, pc: &Precover, depth: usize) -> Result<ChordalCover, CoverError> {
        assert!(depth <= self.g.n(), "recursion must shrink the vertex set");
        check_precover(self.g, s, pc)?;
        let g = self.g;
        let p = pc.path_set();
        let np = g.closed_nbhd(p) & s;

        if np == s {
            let c = ChordalCover::new(pc.w1, pc.w2);
            self.push(StepKind::PathNeighborhood, depth, s, &pc.path, VertexSet::EMPTY, c);
            return Ok(c);
        }
        if !g.is_connected_within(s) {
            return self.components(s, pc, depth);
        }

        for u in s - np {
            if self.peel && self.nearly_simplicial(s, u) {
                let r = self.attempt(StepKind::Peel, depth, s, pc, VertexSet::singleton(u), |e| e.peel(s, pc, u, depth));
                if let Some(c) = r {
                    return Ok(c);
                }
            }
        }

        if let Some(c) = self.base_cases(s, pc, depth) {
            return Ok(c);
        }

        let (h, map) = g.induced(s);
        if let Some(q) = clique_cutset(&h).map(|q| lift_set(q, &map)) {
            let r = self.attempt(StepKind::CliqueCutset, depth, s, pc, q, |e| e.clique_case(s, pc, q, depth));
            if let Some(c) = r {
                return Ok(c);
            }
        }

        if let Some(c) = self.star_cases(s, pc, depth, &h, &map) {
            return Ok(c);
        }

        if (6..=TWO_JOIN_LIMIT).contains(&h.n()) {
            for tj in all_two_joins(&h)? {
                let tj = lift_join(&tj, &map);
                if let Some((case, tj2, path)) = classify_join(&tj, &pc.path) {
                    let kind = match case {
                        JoinCase::Crossing | JoinCase::Through => StepKind::TwoJoinGlueFirst,
                        JoinCase::Touching | JoinCase::Inside => StepKind::TwoJoinGlueSecond,
                    };
                    let pivot = tj2.z1();
                    let r = self.attempt(kind, depth, s, pc, pivot, |e| e.two_join_case(s, pc, &tj2, &path, case, depth));
                    if let Some(c) = r {
                        return Ok(c);
                    }
                }
            }
        }

        self.fallback_oracle(s, pc, depth)
    }

    fn components(&mut self, s: VertexSet, pc: &Precover, depth: usize) -> Result<ChordalCover, CoverError> {
        let g = self.g;
        let p = pc.path_set();
        let mut out = ChordalCover::default();
        for d in g.components_within(s) {
            if d.intersects(p) {
                let sub = Precover::within(g, d, pc.path.clone(), pc.w1, pc.w2);
                out = out.union(&self.extend(d, &sub, depth + 1)?);
            } else {
                // Split the component with one vertex in both sides, then
                // drop that vertex from the second side.
                let u = d.first().expect("components are non-empty");
                let sub = Precover::within(g, d, InducedPath::single(u), g.closed_neighbors(u) & d, VertexSet::singleton(u));
                let mut c = self.extend(d, &sub, depth + 1)?;
                c.x2.remove(u);
                out = out.union(&c);
            }
        }
        verify_within(g, s, &out, Some(pc)).map_err(|v| CoverError::GlueFailed(v.to_string()))?;
        self.push(StepKind::Components, depth, s, &pc.path, VertexSet::EMPTY, out);
        Ok(out)
    }

    fn nearly_simplicial(&self, s: VertexSet, u: usize) -> bool {
        let nu = self.nb(u, s);
        self.g.is_clique(nu) || nu.iter().any(|w| self.g.is_clique(nu.without(w)))
    }

    fn peel(&mut self, s: VertexSet, pc: &Precover, u: usize, depth: usize) -> Result<ChordalCover, CoverError> {
        let g = self.g;
        let mut c = self.extend(s.without(u), pc, depth + 1)?;
        let nu = self.nb(u, s);
        // N(u) = clique + {odd}; u joins the side that lacks `odd`.
        let odd = if g.is_clique(nu) { None } else { nu.iter().find(|&w| g.is_clique(nu.without(w))) };
        match odd {
            Some(w) if c.x1.contains(w) => c.x2.insert(u),
            _ => c.x1.insert(u),
        }
        Ok(c)
    }

    fn base_cases(&mut self, s: VertexSet, pc: &Precover, depth: usize) -> Option<ChordalCover> {
        let g = self.g;
        let p = pc.path_set();
        let free = s - (pc.w1 | pc.w2);
        if is_chordal_set(g, s) {
            let kind = if g.is_clique(s) { StepKind::BaseClique } else { StepKind::BaseChordal };
            let c = ChordalCover::new(s - (pc.w2 - p), pc.w2);
            return self.attempt(kind, depth, s, pc, VertexSet::EMPTY, |_| Ok(c));
        }
        let (h, map) = g.induced(s);
        if let Some(hole) = whole_graph_hole(&h) {
            // Both sides need a vertex the other lacks.
            let (e1, e2) = (pc.w1 - p, pc.w2 - p);
            let (mut x1, mut x2) = (pc.w1, pc.w2);
            if e1.is_empty() && e2.is_empty() {
                let first = free.first().expect("a hole is not inside N[P]");
                x1.insert(first);
                x2 |= free.without(first);
            } else if e2.is_empty() {
                x2 |= free;
            } else {
                x1 |= free;
            }
            let c = ChordalCover::new(x1, x2);
            let pivot = lift_set(hole.vertex_set(), &map);
            return self.attempt(StepKind::BaseHole, depth, s, pc, pivot, |_| Ok(c));
        }
        if let Some(pyr) = is_pyramid(&h) {
            // The only holes are the unions of two apex-to-base paths; each
            // needs a vertex private to either side.
            let paths = pyr.paths.each_ref().map(|p| lift_set(p.vertex_set(), &map));
            let holes = [paths[0] | paths[1], paths[0] | paths[2], paths[1] | paths[2]];
            let (x1, x2) = hit_holes(&holes, pc.w1 - pc.w2, pc.w2 - pc.w1, free)?;
            let c = ChordalCover::new(pc.w1 | x1, pc.w2 | x2);
            return self.attempt(StepKind::BasePyramid, depth, s, pc, VertexSet::singleton(map[pyr.apex]), |_| Ok(c));
        }
        None
    }

    fn clique_case(&mut self, s: VertexSet, pc: &Precover, q: VertexSet, depth: usize) -> Result<ChordalCover, CoverError> {
        let g = self.g;
        let comps = g.components_within(s - q);
        if comps.len() < 2 || !g.is_clique(q) {
            return Err(CoverError::Precondition("not a clique cutset".into()));
        }
        let w = pc.w1 | pc.w2;
        if let Some(&far) = comps.iter().find(|c| !c.intersects(w)) {
            // Extend on the rest, then on the far piece from one cutset
            // vertex whose cutset neighbours copy the rest's split.
            let rest = s - far;
            let sub = Precover::within(g, rest, pc.path.clone(), pc.w1, pc.w2);
            let x = self.extend(rest, &sub, depth + 1)?;
            let v = q.first().expect("non-empty cutset");
            let piece = far | q;
            let w1 = (x.x1 & q).with(v) | (g.neighbors(v) & far);
            let w2 = (x.x2 & q).with(v);
            let sub = Precover::within(g, piece, InducedPath::single(v), w1, w2);
            let mut y = self.extend(piece, &sub, depth + 1)?;
            if !x.x1.contains(v) {
                y.x1.remove(v);
            }
            if !x.x2.contains(v) {
                y.x2.remove(v);
            }
            return Ok(x.union(&y));
        }
        // Every component meets the precover: split the path along the
        // cutset and extend both sides with the inherited sets.
        let c = comps[0];
        let (a, b) = (c | q, s - c);
        let mut out = ChordalCover::default();
        for part in [a, b] {
            let path = sub_path(&pc.path, part).ok_or_else(|| CoverError::Precondition("path leaves a piece".into()))?;
            let sub = Precover::within(g, part, path, pc.w1 & part, pc.w2 & part);
            out = out.union(&self.extend(part, &sub, depth + 1)?);
        }
        Ok(out)
    }

    fn star_cases(&mut self, s: VertexSet, pc: &Precover, depth: usize, h: &Graph, map: &[usize]) -> Option<ChordalCover> {
        let g = self.g;
        let p = pc.path_set();
        let np = g.closed_nbhd(p) & s;

        for v in s - p {
            if g.closed_neighbors(v) & s == s {
                let r = self.attempt(StepKind::UniversalVertex, depth, s, pc, VertexSet::singleton(v), |e| {
                    e.universal(s, pc, v, depth)
                });
                if r.is_some() {
                    return r;
                }
            }
        }

        // Cutsets between a stretch K of the path and N[K] with a component
        // that stays away from the whole path.
        let verts = pc.path.verts();
        for len in (1..=verts.len()).rev() {
            for start in 0..=verts.len() - len {
                let k: VertexSet = verts[start..start + len].iter().copied().collect();
                let cands: Vec<VertexSet> =
                    anchored_candidates(h, restrict_set(k, map)).map(|x| lift_set(x, map)).collect();
                for x in cands {
                    let comps = g.components_within(s - x);
                    if comps.len() < 2 {
                        continue;
                    }
                    for far in comps.into_iter().filter(|c| !c.intersects(np)) {
                        let r = self.attempt(StepKind::AnchoredStarCutset, depth, s, pc, x, |e| {
                            e.anchored(s, pc, x, far, depth)
                        });
                        if r.is_some() {
                            return r;
                        }
                    }
                }
            }
        }

        for v in s - p {
            let nv = g.closed_neighbors(v) & s;
            let comps = g.components_within(s - nv);
            if comps.len() < 2 {
                continue;
            }
            if !nv.intersects(p) {
                let r = self.attempt(StepKind::FullStarCutset, depth, s, pc, nv, |e| e.full_star_apart(s, pc, v, depth));
                if r.is_some() {
                    return r;
                }
            }
            if p.len() <= 2 {
                for w0 in p & nv {
                    let other = p.without(w0);
                    for &ci in &comps {
                        if other.intersects(ci) || !g.anticomplete(other, ci) {
                            continue;
                        }
                        let r = self.attempt(StepKind::FullStarCutset, depth, s, pc, nv, |e| {
                            e.full_star_beside(s, pc, v, w0, ci, depth)
                        });
                        if r.is_some() {
                            return r;
                        }
                    }
                }
            }
        }

        // A star at v with a single far component C: some piece A of the
        // star's complement misses C, and {v} ∪ (N(C) ∩ N(A)) is a clique
        // cutset in the class.
        let mut tried = Vec::new();
        for v in s {
            let nv = g.closed_neighbors(v) & s;
            let comps = g.components_within(s - nv);
            if comps.len() != 1 {
                continue;
            }
            let far = comps[0];
            let cands: Vec<VertexSet> =
                anchored_candidates(h, restrict_set(VertexSet::singleton(v), map)).map(|x| lift_set(x, map)).collect();
            for x in cands {
                for a in g.components_within(s - x) {
                    if a.intersects(far) {
                        continue;
                    }
                    let b = g.open_nbhd(far) & g.open_nbhd(a) & s;
                    let q = b.with(v);
                    if tried.contains(&q) || !g.is_clique(q) || g.components_within(s - q).len() < 2 {
                        continue;
                    }
                    tried.push(q);
                    let r = self.attempt(StepKind::StarToClique, depth, s, pc, q, |e| e.clique_case(s, pc, q, depth));
                    if r.is_some() {
                        return r;
                    }
                }
            }
        }
        None
    }

    fn universal(&mut self, s: VertexSet, pc: &Precover, v: usize, depth: usize) -> Result<ChordalCover, CoverError> {
        let rest = s.without(v);
        let sub = Precover::within(self.g, rest, pc.path.clone(), pc.w1.without(v), pc.w2.without(v));
        let mut c = self.extend(rest, &sub, depth + 1)?;
        if pc.w1.contains(v) {
            c.x1.insert(v);
        } else {
            c.x2.insert(v);
        }
        Ok(c)
    }

    /// `x` is a cutset between a stretch of the path and its neighbourhood,
    /// `far` a component of `s \ x` with no vertex in `N[P]`.
    fn anchored(&mut self, s: VertexSet, pc: &Precover, x: VertexSet, far: VertexSet, depth: usize) -> Result<ChordalCover, CoverError> {
        let g = self.g;
        let near = x | far;
        let path = sub_path(&pc.path, x).ok_or_else(|| CoverError::Precondition("cutset cuts the path".into()))?;
        let sub = Precover::within(g, near, path, pc.w1 & near, pc.w2 & near);
        let a = self.extend(near, &sub, depth + 1)?;
        let rest = s - far;
        let sub = Precover::within(g, rest, pc.path.clone(), pc.w1, pc.w2);
        let b = self.extend(rest, &sub, depth + 1)?;
        Ok(a.union(&b))
    }

    /// Full star `N[v]` with the path in a component `C1` away from it:
    /// extend on `C1 ∪ N[v]`, then on the rest from `v` with the
    /// neighbourhood split copied.
    fn full_star_apart(&mut self, s: VertexSet, pc: &Precover, v: usize, depth: usize) -> Result<ChordalCover, CoverError> {
        let g = self.g;
        let nv = g.closed_neighbors(v) & s;
        let home = g.component_of(pc.path.first(), s - nv);
        let near = home | nv;
        let sub = Precover::within(g, near, pc.path.clone(), pc.w1, pc.w2);
        let x = self.extend(near, &sub, depth + 1)?;
        let rest = s - home;
        let w1 = (x.x1 & nv).with(v);
        let w2 = (x.x2 & nv).with(v);
        let sub = Precover::within(g, rest, InducedPath::single(v), w1, w2);
        let mut y = self.extend(rest, &sub, depth + 1)?;
        y.x1.remove(v);
        y.x2.remove(v);
        Ok(x.union(&y))
    }

    /// Full star `N[v]` with `w0 ∈ P ∩ N(v)` and the rest of the path
    /// anticomplete to the component `ci`: extend without `ci`, then solve
    /// `ci ∪ N[v]` from the edge `v w0`.
    fn full_star_beside(
        &mut self,
        s: VertexSet,
        pc: &Precover,
        v: usize,
        w0: usize,
        ci: VertexSet,
        depth: usize,
    ) -> Result<ChordalCover, CoverError> {
        let g = self.g;
        let nv = g.closed_neighbors(v) & s;
        let rest = s - ci;
        let sub = Precover::within(g, rest, pc.path.clone(), pc.w1 & rest, pc.w2 & rest);
        let x = self.extend(rest, &sub, depth + 1)?;
        let piece = ci | nv;
        let nw0 = g.closed_neighbors(w0) & piece;
        let vw = VertexSet::singleton(v).with(w0);
        let mut w1 = (nv & x.x1) | (pc.w1 & nw0) | vw;
        let mut w2 = (nv & x.x2) | (pc.w2 & nw0) | vw;
        // The other path vertex may sit in N(v); it keeps both sides in
        // the outer cover, so inside the piece one side is enough.
        for o in pc.path_set().without(w0) & piece {
            w2.remove(o);
            w1.insert(o);
        }
        let sub = Precover::within(g, piece, InducedPath::new(g, vec![v, w0])?, w1, w2);
        let mut y = self.extend(piece, &sub, depth + 1)?;
        y.x1.remove(v);
        y.x2.remove(v);
        if !x.x1.contains(v) && !x.x2.contains(v) {
            return Err(CoverError::Precondition("centre missing from the outer cover".into()));
        }
        Ok(x.union(&y))
    }

    /// Completes a precover on a 2-join block and extends it.
    fn solve_block(
        &mut self,
        block: VertexSet,
        verts: Vec<usize>,
        seed1: VertexSet,
        seed2: VertexSet,
        depth: usize,
    ) -> Result<ChordalCover, CoverError> {
        let g = self.g;
        let path = InducedPath::new(g, verts)?;
        let ps = path.vertex_set();
        let np = g.closed_nbhd(ps) & block;
        let partial = Precover::within(g, block, path.clone(), (seed1 & np) | ps, (seed2 & np) | ps);
        let done = complete_within(g, block, &partial, None)?;
        let pcw = ChordalCover::new(done.precover.w1, done.precover.w2);
        self.push(StepKind::PrecoverCompletion, depth + 1, block, &path, VertexSet::EMPTY, pcw);
        self.extend(block, &done.precover, depth + 1)
    }

    fn two_join_case(
        &mut self,
        s: VertexSet,
        pc: &Precover,
        tj: &TwoJoin,
        path: &InducedPath,
        case: JoinCase,
        depth: usize,
    ) -> Result<ChordalCover, CoverError> {
        let (b1, b2) = (tj.block(1), tj.block(2));
        let verts = path.verts();
        let ps = path.vertex_set();
        let (first, second, orientation) = match case {
            JoinCase::Crossing | JoinCase::Through => {
                // Replace the Z2 stretch of the path by M2 inside B(Z1).
                let mut p1: Vec<usize> = Vec::new();
                let mut spliced = false;
                for &v in verts {
                    if tj.z1().contains(v) {
                        p1.push(v);
                    } else if !spliced {
                        p1.extend_from_slice(tj.m2.verts());
                        spliced = true;
                    }
                }
                if !spliced {
                    p1.extend_from_slice(tj.m2.verts());
                }
                let first = self.solve_block(b1, p1, pc.w1 & b1, pc.w2 & b1, depth)?;
                let second = if matches!(case, JoinCase::Crossing) && !ps.intersects(tj.b2) {
                    let mut p2: Vec<usize> = tj.m1.reversed().verts().to_vec();
                    p2.extend(verts.iter().copied().filter(|&v| tj.z2().contains(v)));
                    self.solve_block(b2, p2, pc.w1 & b2, pc.w2 & b2, depth)?
                } else {
                    let p2 = sub_path(path, b2).ok_or_else(|| CoverError::Precondition("path splits in block 2".into()))?;
                    let ends = VertexSet::singleton(tj.m1.first()).with(tj.m1.last());
                    let s1 = (pc.w1 & b2) | (ends & first.x1);
                    let s2 = (pc.w2 & b2) | (ends & first.x2);
                    self.solve_block(b2, p2.verts().to_vec(), s1, s2, depth)?
                };
                (first, second, GlueOrientation::MarkerInFirst)
            }
            JoinCase::Touching => {
                let second = self.solve_block(b2, tj.m1.verts().to_vec(), pc.w1 & b2, pc.w2 & b2, depth)?;
                let p1 = if ps.intersects(tj.b1) {
                    verts.to_vec()
                } else if tj.a1.contains(*verts.last().expect("non-empty path")) {
                    verts.iter().chain(tj.m2.verts()).copied().collect()
                } else {
                    verts.iter().rev().chain(tj.m2.verts()).copied().collect()
                };
                let ends = VertexSet::singleton(tj.m2.first()).with(tj.m2.last());
                let s1 = (pc.w1 & b1) | (ends & second.x1);
                let s2 = (pc.w2 & b1) | (ends & second.x2);
                let first = self.solve_block(b1, p1, s1, s2, depth)?;
                (first, second, GlueOrientation::MarkerInSecond)
            }
            JoinCase::Inside => {
                let sub = Precover::within(self.g, b1, path.clone(), pc.w1, pc.w2);
                let first = self.extend(b1, &sub, depth + 1)?;
                let ends = VertexSet::singleton(tj.m2.first()).with(tj.m2.last());
                let m1 = tj.m1.vertex_set();
                let second = self.solve_block(b2, tj.m1.verts().to_vec(), (ends & first.x1) | m1, (ends & first.x2) | m1, depth)?;
                (first, second, GlueOrientation::MarkerInSecond)
            }
        };
        glue_two_join_within(self.g, s, tj, &first, &second, orientation)
    }

    fn fallback_oracle(&mut self, s: VertexSet, pc: &Precover, depth: usize) -> Result<ChordalCover, CoverError> {
        if !self.fallback {
            return Err(CoverError::NoConstruction(s));
        }
        let g = self.g;
        if s.len() > ORACLE_LIMIT {
            return Err(CoverError::NoConstruction(s));
        }
        let (h, map) = g.induced(s);
        let local = Precover::within(&h, h.vertices(), local_path(&pc.path, &map), restrict_set(pc.w1, &map), restrict_set(pc.w2, &map));
        let found = brute_force_extend(&h, &local).map_err(|e| CoverError::Precondition(e.to_string()))?;
        match found {
            Some(c) => {
                let c = ChordalCover::new(lift_set(c.x1, &map), lift_set(c.x2, &map));
                self.push(StepKind::FallbackOracle, depth, s, &pc.path, VertexSet::EMPTY, c);
                Ok(c)
            }
            None => Err(CoverError::FallbackExhausted(s)),
        }
    }
}

/// Splits `free` between the sides so that every hole has a vertex private
/// to each side, given the private parts `own1`/`own2` fixed so far.
fn hit_holes(holes: &[VertexSet], own1: VertexSet, own2: VertexSet, free: VertexSet) -> Option<(VertexSet, VertexSet)> {
    let need = holes.iter().find_map(|&h| {
        if !h.intersects(own1) {
            Some((h, 1))
        } else if !h.intersects(own2) {
            Some((h, 2))
        } else {
            None
        }
    });
    let Some((h, side)) = need else {
        return Some((own1 | free, own2));
    };
    for v in h & free {
        let r = if side == 1 {
            hit_holes(holes, own1.with(v), own2, free.without(v))
        } else {
            hit_holes(holes, own1, own2.with(v), free.without(v))
        };
        if r.is_some() {
            return r;
        }
    }
    None
}

fn lift_join(tj: &TwoJoin, map: &[usize]) -> TwoJoin {
    TwoJoin {
        a1: lift_set(tj.a1, map),
        c1: lift_set(tj.c1, map),
        b1: lift_set(tj.b1, map),
        a2: lift_set(tj.a2, map),
        c2: lift_set(tj.c2, map),
        b2: lift_set(tj.b2, map),
        m1: tj.m1.map(map),
        m2: tj.m2.map(map),
    }
}

/// Re-orients `tj` and `path` into one of the four normal forms.
fn classify_join(tj: &TwoJoin, path: &InducedPath) -> Option<(JoinCase, TwoJoin, InducedPath)> {
    let mut tj = tj.clone();
    let mut path = path.clone();
    if !tj.z1().contains(path.first()) {
        if tj.z1().contains(path.last()) {
            path = path.reversed();
        } else {
            tj = tj.swapped();
        }
    }
    let ps = path.vertex_set();
    if tj.z2().contains(path.last()) {
        // One crossing edge; make it A1–A2 and keep B1 off the path.
        let v = path.verts();
        let i = v.iter().position(|&x| tj.z2().contains(x))?;
        if v[i..].iter().any(|&x| tj.z1().contains(x)) {
            return None;
        }
        if tj.b1.contains(v[i - 1]) {
            tj = tj.mirrored();
        }
        if ps.intersects(tj.b1) {
            if ps.intersects(tj.b2) {
                return None;
            }
            tj = tj.swapped();
            path = path.reversed();
        }
        let v = path.verts();
        let i = v.iter().position(|&x| tj.z2().contains(x))?;
        if !(tj.a1.contains(v[i - 1]) && tj.a2.contains(v[i])) {
            return None;
        }
        return Some((JoinCase::Crossing, tj, path));
    }
    if ps.intersects(tj.z2()) {
        let v = path.verts();
        let i = v.iter().position(|&x| tj.z2().contains(x))?;
        if tj.b2.contains(v[i]) {
            tj = tj.mirrored();
        }
        return Some((JoinCase::Through, tj, path));
    }
    if ps.is_subset(tj.c1) {
        return Some((JoinCase::Inside, tj, path));
    }
    if !ps.intersects(tj.a1) {
        tj = tj.mirrored();
    }
    Some((JoinCase::Touching, tj, path))
}
