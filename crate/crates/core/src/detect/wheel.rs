//! Wheels: a hole plus an outside vertex with at least three neighbours on it.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::chordal::for_each_hole;
use super::DetectError;
use crate::graph::{Graph, Hole, InducedPath, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wheel {
    pub hole: Hole,
    pub center: usize,
    pub spokes: VertexSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WheelKind {
    Any,
    Sector,
    Twin,
    Universal,
    ShortPyramid,
    Proper,
    Even,
}

/// Every kind a wheel belongs to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WheelFlags {
    /// Centre adjacent to the whole hole.
    pub universal: bool,
    /// Universal, or the spokes form one arc of the hole.
    pub sector: bool,
    /// Spokes form a three-vertex arc.
    pub twin: bool,
    /// Exactly three spokes: two adjacent and one apart.
    pub short_pyramid: bool,
    /// Neither twin nor short pyramid.
    pub proper: bool,
    /// Even number of spokes.
    pub even: bool,
}

impl WheelFlags {
    pub fn has(&self, kind: WheelKind) -> bool {
        match kind {
            WheelKind::Any => true,
            WheelKind::Sector => self.sector,
            WheelKind::Twin => self.twin,
            WheelKind::Universal => self.universal,
            WheelKind::ShortPyramid => self.short_pyramid,
            WheelKind::Proper => self.proper,
            WheelKind::Even => self.even,
        }
    }
}

/// Number of maximal runs of consecutive spokes around the hole.
fn spoke_runs(hole: &[usize], spokes: VertexSet) -> usize {
    let k = hole.len();
    (0..k)
        .filter(|&i| spokes.contains(hole[i]) && !spokes.contains(hole[(i + k - 1) % k]))
        .count()
}

/// Flags for `(hole, center)`, or `None` if it is not a wheel.
pub fn classify_wheel(g: &Graph, hole: &Hole, center: usize) -> Option<WheelFlags> {
    let hs = hole.vertex_set();
    if hs.contains(center) {
        return None;
    }
    let spokes = g.neighbors(center) & hs;
    let count = spokes.len();
    if count < 3 {
        return None;
    }
    let universal = spokes == hs;
    let runs = if universal { 0 } else { spoke_runs(hole.verts(), spokes) };
    let twin = count == 3 && runs == 1;
    let short_pyramid = count == 3 && runs == 2;
    Some(WheelFlags {
        universal,
        sector: universal || runs == 1,
        twin,
        short_pyramid,
        proper: !twin && !short_pyramid,
        even: count.is_multiple_of(2),
    })
}

/// Calls `f` for every wheel of `g`, in hole-enumeration order.
pub fn for_each_wheel<F>(g: &Graph, mut f: F) -> ControlFlow<()>
where
    F: FnMut(Wheel, WheelFlags) -> ControlFlow<()>,
{
    for_each_hole(g, g.vertices(), |h| {
        let hole = Hole::new_unchecked(h.to_vec());
        let hs = hole.vertex_set();
        for c in g.vertices() - hs {
            if let Some(flags) = classify_wheel(g, &hole, c) {
                let spokes = g.neighbors(c) & hs;
                f(Wheel { hole: hole.clone(), center: c, spokes }, flags)?;
            }
        }
        ControlFlow::Continue(())
    })
}

pub fn find_wheel(g: &Graph, kind: WheelKind) -> Option<Wheel> {
    let mut found = None;
    let _ = for_each_wheel(g, |w, flags| {
        if flags.has(kind) {
            found = Some(w);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

pub fn is_sector_wheel_free(g: &Graph) -> bool {
    find_wheel(g, WheelKind::Sector).is_none()
}

/// Sectors of a non-universal wheel: the subpaths of the hole between
/// cyclically consecutive spokes, in hole order.
pub fn sectors(wheel: &Wheel) -> Vec<InducedPath> {
    let h = wheel.hole.verts();
    let k = h.len();
    let idx: Vec<usize> = (0..k).filter(|&i| wheel.spokes.contains(h[i])).collect();
    let mut out = Vec::with_capacity(idx.len());
    for (j, &start) in idx.iter().enumerate() {
        let end = idx[(j + 1) % idx.len()];
        let mut verts = vec![h[start]];
        let mut i = start;
        while i != end {
            i = (i + 1) % k;
            verts.push(h[i]);
        }
        out.push(InducedPath::new_unchecked(verts));
    }
    out
}

/// Cutset around a proper wheel centre that cuts a long sector's interior
/// off from the rest of the hole.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorCutsetWitness {
    pub center: usize,
    pub hole: Hole,
    pub sector: InducedPath,
    pub w_set: VertexSet,
    pub z_set: VertexSet,
    pub n_prime: VertexSet,
    pub cutset: VertexSet,
}

/// For a proper, non-universal wheel `(H, x)` and a long sector `Q` from
/// `x1` to `x2`: `W` holds the spokes `h` for which the subpath of `H \ {x1}`
/// from `x2` to `h` has an even number of spokes, `Z = H \ (Q ∪ N(x))`,
/// `N' = N(x) \ W`, and `N' ∪ {x}` must separate `Q*` from `W ∪ Z`.
///
/// On even-hole-free graphs the separation always holds; a failure is
/// reported as [`DetectError::SeparationFailed`].
pub fn proper_wheel_cutset(g: &Graph, wheel: &Wheel, q: &InducedPath) -> Result<SectorCutsetWitness, DetectError> {
    wheel.hole.validate(g)?;
    let flags = classify_wheel(g, &wheel.hole, wheel.center)
        .ok_or_else(|| DetectError::Precondition("not a wheel".into()))?;
    if flags.universal {
        return Err(DetectError::Precondition("universal wheel".into()));
    }
    if !flags.proper {
        return Err(DetectError::Precondition("twin wheel or short pyramid".into()));
    }
    let x = wheel.center;
    let spokes = g.neighbors(x) & wheel.hole.vertex_set();
    let is_sector = sectors(wheel).iter().any(|s| s == q || *s == q.reversed());
    if !is_sector {
        return Err(DetectError::Precondition("path is not a sector of the wheel".into()));
    }
    if q.len() < 2 {
        return Err(DetectError::Precondition("sector is not long".into()));
    }
    let (x1, x2) = (q.first(), q.last());
    let h = wheel.hole.verts();
    let k = h.len();
    let i1 = wheel.hole.position(x1).expect("sector end on hole");
    // H \ {x1} as a linear order.
    let line: Vec<usize> = (1..k).map(|d| h[(i1 + d) % k]).collect();
    let pos = |v: usize| line.iter().position(|&u| u == v).expect("vertex on hole");
    let p2 = pos(x2);
    let mut w_set = VertexSet::EMPTY;
    for hv in spokes.without(x1) {
        let ph = pos(hv);
        let (lo, hi) = (p2.min(ph), p2.max(ph));
        let count = line[lo..=hi].iter().filter(|&&u| spokes.contains(u)).count();
        if count % 2 == 0 {
            w_set.insert(hv);
        }
    }
    let z_set = wheel.hole.vertex_set() - q.vertex_set() - g.neighbors(x);
    let n_prime = g.neighbors(x) - w_set;
    let cutset = n_prime.with(x);
    let witness = SectorCutsetWitness {
        center: x,
        hole: wheel.hole.clone(),
        sector: q.clone(),
        w_set,
        z_set,
        n_prime,
        cutset,
    };
    let far = w_set | z_set;
    for comp in g.components_within(g.vertices() - cutset) {
        if comp.intersects(q.interior()) && comp.intersects(far) {
            return Err(DetectError::SeparationFailed(format!(
                "component {comp} joins the sector interior {} to {far}",
                q.interior()
            )));
        }
    }
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::figure1;

    #[test]
    fn figure1_sector_wheel() {
        let g = figure1();
        let w = find_wheel(&g, WheelKind::Sector).expect("sector wheel");
        w.hole.validate(&g).unwrap();
        let flags = classify_wheel(&g, &w.hole, w.center).unwrap();
        assert!(flags.sector);
        // The documented witness: H = y3-x-y5-z3-z2, centre y4.
        let h = Hole::new(&g, vec![3, 0, 5, 9, 8]).unwrap();
        let f = classify_wheel(&g, &h, 4).unwrap();
        assert!(f.sector && f.twin);
        assert_eq!(g.neighbors(4) & h.vertex_set(), VertexSet::from_iter([0, 3, 8]));
    }

    #[test]
    fn universal_wheel_on_c5() {
        let g = crate::corpus::named_graph("wheel(5)").unwrap();
        let w = find_wheel(&g, WheelKind::Universal).unwrap();
        assert_eq!(w.center, 5);
        assert_eq!(w.spokes.len(), 5);
    }

    #[test]
    fn bare_cycle_has_no_wheel() {
        assert!(find_wheel(&Graph::cycle(7).unwrap(), WheelKind::Any).is_none());
    }

    #[test]
    fn short_pyramid_and_sectors() {
        // C5 on 0..4 plus centre 5 adjacent to 0, 1, 3.
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (5, 1), (5, 3)]).unwrap();
        let h = Hole::new(&g, vec![0, 1, 2, 3, 4]).unwrap();
        let f = classify_wheel(&g, &h, 5).unwrap();
        assert!(f.short_pyramid && !f.twin && !f.proper && !f.sector && !f.even);
        let w = Wheel { hole: h, center: 5, spokes: VertexSet::from_iter([0, 1, 3]) };
        let lens: Vec<usize> = sectors(&w).iter().map(|s| s.len()).collect();
        assert_eq!(lens, vec![1, 2, 2]);
    }

    #[test]
    fn proper_wheel_cutset_rejections() {
        let g = crate::corpus::named_graph("wheel(5)").unwrap();
        let w = find_wheel(&g, WheelKind::Universal).unwrap();
        let q = InducedPath::new(&g, vec![0, 1]).unwrap();
        assert!(matches!(proper_wheel_cutset(&g, &w, &q), Err(DetectError::Precondition(_))));
        let f = crate::corpus::figure1();
        let h = Hole::new(&f, vec![3, 0, 5, 9, 8]).unwrap();
        let twin = Wheel { hole: h, center: 4, spokes: VertexSet::from_iter([0, 3, 8]) };
        let q = InducedPath::new(&f, vec![0, 5, 9, 8]).unwrap();
        assert!(matches!(proper_wheel_cutset(&f, &twin, &q), Err(DetectError::Precondition(_))));
    }

    #[test]
    fn proper_wheel_cutset_separates() {
        // C9 on 0..8 with centre 9 adjacent to 0, 3, 6: three sectors of length 3.
        let mut edges: Vec<(usize, usize)> = (0..9).map(|i| (i, (i + 1) % 9)).collect();
        edges.extend([(9, 0), (9, 3), (9, 6)]);
        let g = Graph::from_edges(10, edges).unwrap();
        assert!(crate::detect::is_even_hole_free(&g));
        let w = find_wheel(&g, WheelKind::Proper).unwrap();
        for q in sectors(&w).into_iter().filter(|s| s.len() > 1) {
            let wit = proper_wheel_cutset(&g, &w, &q).unwrap();
            assert!(wit.cutset.contains(9));
            assert!(!wit.cutset.intersects(q.interior()));
            assert!(!wit.w_set.is_empty());
        }
    }
}
