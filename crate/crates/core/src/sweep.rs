//! Per-graph corpus records: structural flags, cover outcome, and the
//! structural audits that must never fire on even-hole-free inputs.

use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::{write_graph6, CorpusRecord, CoverStatus, RecordFlags};
use crate::cover::{chordal_cover, complete_precover_with_order, verify_cover, Precover};
use crate::detect::{
    all_two_joins, decompose, find_cutset, find_hole, find_wheel, for_each_hole, for_each_induced_path,
    has_star_cutset, is_chordal, is_pyramid, recognize_basic, CutsetKind, DetectError, Parity, TwoJoin, WheelKind,
    TWO_JOIN_LIMIT,
};
use crate::graph::{is_flat_path, Graph, InducedPath, VertexSet};
use crate::oracle::{candidate_paths, chordal_by_elimination};

/// Structural flags of `g`. 2-join and basic-graph searches are skipped
/// (reported false) above their size limits.
pub fn classify(g: &Graph) -> RecordFlags {
    let small = g.n() <= TWO_JOIN_LIMIT;
    RecordFlags {
        even_hole_free: find_hole(g, Parity::Even, 4, VertexSet::EMPTY).is_none(),
        sector_wheel_free: find_wheel(g, WheelKind::Sector).is_none(),
        chordal: is_chordal(g),
        has_star_cutset: has_star_cutset(g),
        has_clique_cutset: matches!(find_cutset(g, CutsetKind::Clique, None), Ok(Some(_))),
        has_two_join: small && all_two_joins(g).map(|v| !v.is_empty()).unwrap_or(false),
        is_basic: small && matches!(recognize_basic(g), Ok(Some(_))),
        is_pyramid: is_pyramid(g).is_some(),
    }
}

/// Builds the sweep record for `g`: flags, the outcome of [`chordal_cover`]
/// for in-class graphs, and every audit that fired.
pub fn record(g: &Graph) -> CorpusRecord {
    let flags = classify(g);
    let mut audit_failures = Vec::new();
    let in_class = flags.even_hole_free && flags.sector_wheel_free && g.is_connected();
    let cover_status = if in_class {
        match chordal_cover(g) {
            Ok((c, trace)) => {
                if let Err(v) = verify_cover(g, &c, None) {
                    audit_failures.push(format!("cover-rejected: {v}"));
                    CoverStatus::Failed
                } else if let Err(e) = trace.replay(g) {
                    audit_failures.push(format!("trace-replay: {e}"));
                    CoverStatus::Failed
                } else if trace.fallback_count() > 0 {
                    CoverStatus::FallbackUsed
                } else {
                    CoverStatus::Covered
                }
            }
            Err(e) => {
                audit_failures.push(format!("cover-error: {e}"));
                CoverStatus::Failed
            }
        }
    } else {
        CoverStatus::OutOfClass
    };
    if flags.even_hole_free && g.is_connected() {
        audit_failures.extend(even_hole_free_audits(g));
        if flags.sector_wheel_free && !flags.has_star_cutset && g.n() <= TWO_JOIN_LIMIT {
            audit_failures.extend(block_audit(g));
        }
    }
    CorpusRecord { graph6: write_graph6(g), n: g.n(), flags, cover_status, audit_failures }
}

/// Audits that hold on every even-hole-free graph: no even wheel, the
/// decomposition always applies, and paths and holes cross 2-joins thinly.
pub fn even_hole_free_audits(g: &Graph) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(w) = find_wheel(g, WheelKind::Even) {
        out.push(format!("even-wheel: hole {} centre {}", w.hole, w.center));
    }
    if g.n() <= TWO_JOIN_LIMIT {
        if let Err(DetectError::NoCaseApplies) = decompose(g) {
            out.push("no-decomposition".into());
        }
        if let Ok(joins) = all_two_joins(g) {
            for tj in &joins {
                out.extend(crossing_violations(g, tj));
            }
        }
    }
    out
}

/// Holes and induced paths meeting both `A1` and `A2` have at most three
/// vertices in `A1 ∪ A2`, and a flat path meeting both meets them in one of
/// its edges; likewise for the `B` sides.
pub fn crossing_violations(g: &Graph, tj: &TwoJoin) -> Vec<String> {
    let mut out = Vec::new();
    let pairs = [("a", tj.a1, tj.a2), ("b", tj.b1, tj.b2)];
    let mut check = |kind: &str, q: &[usize], flat: bool| {
        let qs: VertexSet = q.iter().copied().collect();
        for (side, x1, x2) in pairs {
            if !qs.intersects(x1) || !qs.intersects(x2) {
                continue;
            }
            let meet = qs & (x1 | x2);
            if meet.len() > 3 {
                out.push(format!("two-join-crossing: {kind} {q:?} meets {side}-sides in {meet}"));
            }
            if flat {
                let consecutive = q.windows(2).any(|w| meet == VertexSet::singleton(w[0]).with(w[1]));
                if !consecutive {
                    out.push(format!("flat-path-crossing: path {q:?} meets {side}-sides in {meet}"));
                }
            }
        }
    };
    let _ = for_each_hole(g, g.vertices(), |h| {
        check("hole", h, false);
        ControlFlow::Continue(())
    });
    let _ = for_each_induced_path(g, |p| {
        let flat = is_flat_path(g, &InducedPath::new(g, p.to_vec()).expect("enumerated paths are induced"))
            .expect("vertices in range");
        check("path", p, flat);
        ControlFlow::Continue(())
    });
    out
}

/// For a star-cutset-free graph in the class, both blocks of every 2-join
/// are star-cutset-free.
pub fn block_audit(g: &Graph) -> Vec<String> {
    let mut out = Vec::new();
    for tj in all_two_joins(g).unwrap_or_default() {
        for i in [1, 2] {
            let (h, _) = g.induced(tj.block(i));
            if has_star_cutset(&h) {
                out.push(format!("block-star-cutset: block {i} of the 2-join with Z1 = {}", tj.z1()));
            }
        }
    }
    out
}

/// The partial precover the order probe starts from on `path`: the path
/// in both sets and each common neighbour of its ends in the first set
/// that keeps it chordal, else the second. `None` when some common
/// neighbour fits on neither side (a hole through the whole path), where
/// completion has nothing to start from.
pub fn seed_precover(g: &Graph, path: &InducedPath) -> Option<Precover> {
    let p = path.vertex_set();
    let (first, last) = (path.first(), path.last());
    let common = if first == last { g.neighbors(first) } else { g.neighbors(first) & g.neighbors(last) } - p;
    let (mut w1, mut w2) = (p, p);
    for v in common {
        if chordal_by_elimination(g, w1.with(v)) {
            w1.insert(v);
        } else {
            w2.insert(v);
        }
    }
    Precover::new(g, path.clone(), w1, w2).ok()
}

/// Completes the seed precover of every flat path of `g` under `orders`
/// random visiting orders and reports any broken postcondition, or any
/// disagreement between orders when no tie had to be broken.
pub fn order_probe(g: &Graph, seed: u64, orders: usize) -> Vec<String> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for path in candidate_paths(g, false) {
        let Some(pc) = seed_precover(g, &path) else {
            continue;
        };
        let p = path.vertex_set();
        let np = p.iter().fold(p, |acc, v| acc | g.neighbors(v));
        let mut order: Vec<usize> = (np - (pc.w1 | pc.w2)).to_vec();
        let mut reference = None;
        for _ in 0..orders {
            order.shuffle(&mut rng);
            let done = match complete_precover_with_order(g, &pc, &order) {
                Ok(d) => d,
                Err(e) => {
                    out.push(format!("order-probe: {path} order {order:?}: {e}"));
                    break;
                }
            };
            let w = &done.precover;
            let ok = pc.w1.is_subset(w.w1)
                && pc.w2.is_subset(w.w2)
                && w.w1 & w.w2 == p
                && w.w1 | w.w2 == np
                && chordal_by_elimination(g, w.w1)
                && chordal_by_elimination(g, w.w2);
            if !ok {
                out.push(format!("order-probe: {path} order {order:?} breaks the completion postconditions"));
                break;
            }
            match &reference {
                None => reference = Some(done),
                Some(r) if r.tie_breaks.is_empty() && done.tie_breaks.is_empty() && r.precover != done.precover => {
                    out.push(format!("order-probe: {path} depends on the visiting order"));
                    break;
                }
                Some(_) => {}
            }
        }
    }
    out
}
