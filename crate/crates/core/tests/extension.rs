mod common;

use rayon::prelude::*;

use chordcover::corpus::{vendored_corpus, write_graph6};
use chordcover::cover::{extend_cover, ExtendMode};
use chordcover::detect::has_star_cutset;
use chordcover::oracle::{candidate_paths, complete_precovers};
use chordcover::Graph;

/// Extends every complete precover on every candidate path and returns the
/// problems found, plus the number of precovers tried.
fn sweep(g: &Graph, mode: ExtendMode) -> (usize, Vec<String>) {
    let mut tried = 0;
    let mut bad = Vec::new();
    for path in candidate_paths(g, mode == ExtendMode::Weak) {
        for pc in complete_precovers(g, &path) {
            tried += 1;
            match extend_cover(g, &pc, mode) {
                Ok((c, trace)) => {
                    let kept = pc.w1.is_subset(c.x1) && pc.w2.is_subset(c.x2);
                    if !kept || !common::is_cover(g, &c, Some(path.vertex_set())) || trace.fallback_count() > 0 {
                        bad.push(format!("{} {path}: bad extension", write_graph6(g)));
                    }
                }
                Err(e) => bad.push(format!("{} {path}: {e}", write_graph6(g))),
            }
        }
    }
    (tried, bad)
}

fn run(mode: ExtendMode, max_n: usize, need_star_free: bool) {
    let graphs: Vec<Graph> = vendored_corpus()
        .filter(|g| g.n() <= max_n && common::in_class(g))
        .filter(|g| !need_star_free || !has_star_cutset(g))
        .collect();
    let per: Vec<(usize, Vec<String>)> = graphs.par_iter().map(|g| sweep(g, mode)).collect();
    let tried: usize = per.iter().map(|p| p.0).sum();
    let bad: Vec<&String> = per.iter().flat_map(|p| &p.1).collect();
    assert!(tried > 0);
    assert!(bad.is_empty(), "{} of {tried} precovers failed: {:?}", bad.len(), &bad[..bad.len().min(5)]);
}

#[test]
fn weak_extension_over_small_corpus() {
    run(ExtendMode::Weak, 7, false);
}

#[test]
fn flat_path_extension_over_star_free_corpus() {
    run(ExtendMode::Fpe, 8, true);
}
