mod common;

use rayon::prelude::*;

use chordcover::corpus::{vendored_corpus, write_graph6};
use chordcover::detect::{has_star_cutset, is_chordal, is_even_hole_free, is_sector_wheel_free, find_wheel, WheelKind};
use chordcover::Graph;

fn disagreements(check: impl Fn(&Graph) -> bool + Sync) -> Vec<String> {
    let graphs: Vec<Graph> = vendored_corpus().collect();
    graphs.par_iter().filter(|g| !check(g)).map(write_graph6).collect()
}

#[test]
fn chordality_matches_subset_search() {
    assert_eq!(disagreements(|g| is_chordal(g) == common::holes(g).is_empty()), Vec::<String>::new());
}

#[test]
fn even_holes_match_subset_search() {
    assert_eq!(disagreements(|g| is_even_hole_free(g) != common::has_even_hole(g)), Vec::<String>::new());
}

#[test]
fn sector_wheels_match_subset_search() {
    assert_eq!(disagreements(|g| is_sector_wheel_free(g) != common::has_sector_wheel(g)), Vec::<String>::new());
}

#[test]
fn wheels_match_subset_search() {
    let ok = |g: &Graph| find_wheel(g, WheelKind::Any).is_some() == !common::wheels(g).is_empty();
    assert_eq!(disagreements(ok), Vec::<String>::new());
}

#[test]
fn star_cutsets_match_subset_search() {
    assert_eq!(disagreements(|g| has_star_cutset(g) == common::has_star_cutset(g)), Vec::<String>::new());
}
