use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value};

use chordcover::corpus::{
    build_bt, gen_pyramid, named_graph, parse_graph6, read_graph6_lines, to_dot, write_graph6, CorpusRecord,
    CoverStatus, Tree,
};
use chordcover::cover::{chordal_cover_with, verify_cover, ChordalCover, CoverError, EngineOptions, Precover};
use chordcover::detect::{
    find_cutset, find_hole, find_two_join, find_wheel, is_pyramid, recognize_basic, CutsetKind, Parity, WheelKind,
};
use chordcover::oracle::{brute_force_cover, brute_force_extend, check_fpe};
use chordcover::sweep::{order_probe, record};
use chordcover::{Graph, InducedPath, VertexSet};

use crate::{CliError, DetectKind, FpeKind, GraphInput, EXIT_CLASS, EXIT_FAILURE, EXIT_OK};

type CmdResult = Result<u8, CliError>;

fn data<E: std::fmt::Display>(what: &str) -> impl Fn(E) -> CliError + '_ {
    move |e| CliError::Data(format!("{what}: {e}"))
}

fn parse_one(text: &str) -> Result<Graph, CliError> {
    parse_graph6(text.trim()).map_err(|e| CliError::Data(e.to_string()))
}

fn load(input: &GraphInput) -> Result<Vec<Graph>, CliError> {
    if let Some(g6) = &input.graph6 {
        return Ok(vec![parse_one(g6)?]);
    }
    let path = input.file.as_deref().expect("clap requires graph6 or --file");
    let lines: Vec<_> = if path == Path::new("-") {
        read_graph6_lines(io::stdin().lock()).collect()
    } else {
        let f = File::open(path).map_err(data(&path.display().to_string()))?;
        read_graph6_lines(BufReader::new(f)).collect()
    };
    lines
        .into_iter()
        .map(|(line, r)| r.map_err(|e| CliError::Data(format!("line {line}: {e}"))))
        .collect()
}

fn emit(v: &Value) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    writeln!(out, "{v}").map_err(|e| CliError::Failure(format!("stdout: {e}")))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))
}

/// Comma-separated vertex ids; the empty string is the empty set.
fn parse_ids(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| CliError::Data(format!("bad vertex id `{s}`"))))
        .collect()
}

fn parse_set(g: &Graph, text: &str) -> Result<VertexSet, CliError> {
    let ids = parse_ids(text)?;
    if let Some(&v) = ids.iter().find(|&&v| v >= g.n()) {
        return Err(CliError::Data(format!("vertex {v} out of range for n = {}", g.n())));
    }
    Ok(ids.into_iter().collect())
}

fn witness(g: &Graph, kind: DetectKind) -> Result<Value, CliError> {
    let fail = |e: chordcover::detect::DetectError| CliError::Failure(e.to_string());
    let v = match kind {
        DetectKind::Hole => json!(find_hole(g, Parity::Any, 4, VertexSet::EMPTY)),
        DetectKind::EvenHole => json!(find_hole(g, Parity::Even, 4, VertexSet::EMPTY)),
        DetectKind::SectorWheel => json!(find_wheel(g, WheelKind::Sector)),
        DetectKind::TwoJoin => json!(find_two_join(g).map_err(fail)?),
        DetectKind::StarCutset => json!(find_cutset(g, CutsetKind::Star, None).map_err(fail)?),
        DetectKind::CliqueCutset => json!(find_cutset(g, CutsetKind::Clique, None).map_err(fail)?),
        DetectKind::Basic => json!(recognize_basic(g).map_err(fail)?),
        DetectKind::Pyramid => json!(is_pyramid(g)),
    };
    Ok(v)
}

const ALL_KINDS: [(DetectKind, &str); 8] = [
    (DetectKind::Hole, "hole"),
    (DetectKind::EvenHole, "even_hole"),
    (DetectKind::SectorWheel, "sector_wheel"),
    (DetectKind::TwoJoin, "two_join"),
    (DetectKind::StarCutset, "star_cutset"),
    (DetectKind::CliqueCutset, "clique_cutset"),
    (DetectKind::Basic, "basic"),
    (DetectKind::Pyramid, "pyramid"),
];

pub fn detect(input: &GraphInput, kind: Option<DetectKind>) -> CmdResult {
    for g in load(input)? {
        let line = match kind {
            Some(k) => witness(&g, k)?,
            None => {
                let mut obj = serde_json::Map::new();
                obj.insert("graph6".into(), json!(write_graph6(&g)));
                for (k, name) in ALL_KINDS {
                    // Size limits only affect some searches; report them inline.
                    let w = witness(&g, k).unwrap_or_else(|e| {
                        let (CliError::Usage(m) | CliError::Data(m) | CliError::Failure(m)) = e;
                        json!({ "error": m })
                    });
                    obj.insert(name.into(), w);
                }
                Value::Object(obj)
            }
        };
        emit(&line)?;
    }
    Ok(EXIT_OK)
}

fn cover_json(g: &Graph, c: &ChordalCover) -> Value {
    json!({ "graph6": write_graph6(g), "n": g.n(), "x1": c.x1, "x2": c.x2 })
}

pub fn cover(input: &GraphInput, trace: Option<&Path>, dot: Option<&Path>, peel: bool, fallback: bool) -> CmdResult {
    let graphs = load(input)?;
    if graphs.len() != 1 && (trace.is_some() || dot.is_some()) {
        return Err(CliError::Usage("--trace and --dot take a single graph".into()));
    }
    let opts = EngineOptions { peel, fallback };
    let mut code = EXIT_OK;
    for g in &graphs {
        let line = match chordal_cover_with(g, opts) {
            Ok((c, t)) => {
                let verdict = verify_cover(g, &c, None);
                if verdict.is_err() {
                    code = EXIT_FAILURE;
                }
                if let Some(p) = trace {
                    write_file(p, &t.to_ndjson())?;
                }
                if let Some(p) = dot {
                    write_file(p, &to_dot(g, None, Some((c.x1, c.x2))))?;
                }
                let mut v = cover_json(g, &c);
                v["verified"] = json!(verdict.is_ok());
                v["violation"] = json!(verdict.err());
                v["steps"] = json!(t.steps.len());
                v["fallbacks"] = json!(t.fallback_count());
                v
            }
            Err(CoverError::ClassViolation(w)) => {
                code = code.max(EXIT_CLASS);
                json!({ "graph6": write_graph6(g), "error": "class_violation", "witness": w })
            }
            Err(e) => {
                code = EXIT_FAILURE;
                json!({ "graph6": write_graph6(g), "error": "failure", "message": e.to_string() })
            }
        };
        emit(&line)?;
    }
    Ok(code)
}

pub fn verify(
    graph6: &str,
    x1: &str,
    x2: &str,
    path: Option<&str>,
    w1: Option<&str>,
    w2: Option<&str>,
) -> CmdResult {
    let g = parse_one(graph6)?;
    let c = ChordalCover::new(parse_set(&g, x1)?, parse_set(&g, x2)?);
    let pc = match (path, w1, w2) {
        (Some(p), Some(w1), Some(w2)) => {
            let verts = parse_ids(p)?;
            let path = InducedPath::new(&g, verts).map_err(data("path"))?;
            Some(Precover::new(&g, path, parse_set(&g, w1)?, parse_set(&g, w2)?).map_err(data("precover"))?)
        }
        _ => None,
    };
    let verdict = verify_cover(&g, &c, pc.as_ref());
    emit(&json!({ "valid": verdict.is_ok(), "violation": verdict.as_ref().err() }))?;
    Ok(if verdict.is_ok() { EXIT_OK } else { EXIT_FAILURE })
}

pub fn oracle(graph6: &str, precover: Option<&Path>, fpe: Option<FpeKind>) -> CmdResult {
    let g = parse_one(graph6)?;
    let fail = |e: chordcover::oracle::OracleError| CliError::Failure(e.to_string());
    let key = write_graph6(&g);
    let line = if let Some(kind) = fpe {
        let v = check_fpe(&g, kind == FpeKind::Weak).map_err(fail)?;
        json!({ "graph6": key, "weak": kind == FpeKind::Weak, "fpe": v.fpe, "witness": v.witness })
    } else if let Some(p) = precover {
        let text = fs::read_to_string(p).map_err(data(&p.display().to_string()))?;
        let raw: Precover = serde_json::from_str(&text).map_err(data("precover json"))?;
        let path = InducedPath::new(&g, raw.path.verts().to_vec()).map_err(data("precover path"))?;
        let pc = Precover::new(&g, path, raw.w1, raw.w2).map_err(data("precover"))?;
        let found = brute_force_extend(&g, &pc).map_err(fail)?;
        json!({ "graph6": key, "complete": pc.complete, "extendable": found.is_some(), "cover": found })
    } else {
        let found = brute_force_cover(&g).map_err(fail)?;
        json!({ "graph6": key, "coverable": found.is_some(), "cover": found })
    };
    emit(&line)?;
    Ok(EXIT_OK)
}

/// FNV-1a, to give each graph its own probe seed independent of the
/// processing order.
fn key_hash(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn sweep_one(g: &Graph, seed: u64, orders: usize) -> CorpusRecord {
    let mut r = record(g);
    let f = r.flags;
    if orders > 0 && f.even_hole_free && f.sector_wheel_free && !f.has_star_cutset {
        r.audit_failures.extend(order_probe(g, seed ^ key_hash(&r.graph6), orders));
    }
    r
}

pub fn sweep(corpus: &Path, max_n: usize, jobs: Option<usize>, report: Option<&Path>, seed: u64, orders: usize) -> CmdResult {
    if jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let f = File::open(corpus).map_err(data(&corpus.display().to_string()))?;
    let mut graphs = Vec::new();
    for (line, r) in read_graph6_lines(BufReader::new(f)) {
        let g = r.map_err(|e| CliError::Data(format!("{}:{line}: {e}", corpus.display())))?;
        if g.n() <= max_n {
            graphs.push(g);
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Failure(e.to_string()))?;
    let mut records: Vec<CorpusRecord> = pool.install(|| graphs.par_iter().map(|g| sweep_one(g, seed, orders)).collect());
    records.sort_by(|a, b| a.graph6.cmp(&b.graph6));

    let sink: Box<dyn Write> = match report {
        Some(p) => Box::new(File::create(p).map_err(|e| CliError::Failure(format!("{}: {e}", p.display())))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    let io_err = |e: io::Error| CliError::Failure(format!("report: {e}"));
    for r in &records {
        serde_json::to_writer(&mut sink, r).map_err(|e| CliError::Failure(e.to_string()))?;
        sink.write_all(b"\n").map_err(io_err)?;
    }
    sink.flush().map_err(io_err)?;

    let count = |s: CoverStatus| records.iter().filter(|r| r.cover_status == s).count();
    let audits: usize = records.iter().map(|r| r.audit_failures.len()).sum();
    let (covered, fallback, failed) = (count(CoverStatus::Covered), count(CoverStatus::FallbackUsed), count(CoverStatus::Failed));
    eprintln!(
        "swept {} graphs: {covered} covered, {fallback} with fallback, {failed} failed, {} out of class; {audits} audit failures",
        records.len(),
        count(CoverStatus::OutOfClass)
    );
    Ok(if fallback + failed + audits > 0 { EXIT_FAILURE } else { EXIT_OK })
}

pub fn gen(bt: Option<&str>, pyramid: Option<&str>, named: Option<&str>) -> CmdResult {
    let g = if let Some(spec) = bt {
        let t = Tree::parse(spec).map_err(data("tree"))?;
        build_bt(&t).map_err(data("tree"))?.graph
    } else if let Some(spec) = pyramid {
        let l = parse_ids(spec)?;
        let [a, b, c] = l[..] else {
            return Err(CliError::Data(format!("--pyramid takes three lengths, got `{spec}`")));
        };
        gen_pyramid(a, b, c).map_err(data("pyramid"))?
    } else {
        let name = named.expect("clap requires one source");
        named_graph(name).map_err(data("name"))?
    };
    println!("{}", write_graph6(&g));
    Ok(EXIT_OK)
}
