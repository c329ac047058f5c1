//! `chordcover` command line: detectors, covers, verification, the
//! exhaustive oracle, corpus sweeps and graph generators.
//!
//! Exit codes: 0 success, 2 input outside the class (even hole or sector
//! wheel), 3 failure (no cover, rejected cover, sweep audit fired), 64 usage
//! error, 65 unreadable or malformed input.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CLASS: u8 = 2;
pub const EXIT_FAILURE: u8 = 3;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DATA: u8 = 65;

#[derive(Parser, Debug)]
#[command(name = "chordcover", version, about = "Chordal covers of even-hole-free graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Look for structures; prints one JSON line per graph.
    Detect {
        #[command(flatten)]
        input: GraphInput,
        /// Only this structure; prints its witness or `null`.
        #[arg(long, value_enum)]
        kind: Option<DetectKind>,
    },
    /// Compute and verify a chordal cover.
    Cover {
        #[command(flatten)]
        input: GraphInput,
        /// Write the step trace as ndjson (single graph only).
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write a DOT drawing coloured by side (single graph only).
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Disable nearly-simplicial peeling.
        #[arg(long)]
        no_peel: bool,
        /// Fail instead of falling back to exhaustive search.
        #[arg(long)]
        no_fallback: bool,
    },
    /// Check a proposed cover, optionally against a precover.
    Verify {
        graph6: String,
        #[arg(long, allow_hyphen_values = true)]
        x1: String,
        #[arg(long, allow_hyphen_values = true)]
        x2: String,
        /// Path vertices in order, comma separated.
        #[arg(long, requires_all = ["w1", "w2"])]
        path: Option<String>,
        #[arg(long, requires = "path")]
        w1: Option<String>,
        #[arg(long, requires = "path")]
        w2: Option<String>,
    },
    /// Exhaustive search: cover existence, precover extension, or FPE.
    Oracle {
        graph6: String,
        /// JSON file `{"path": [..], "w1": [..], "w2": [..]}`.
        #[arg(long, conflicts_with = "fpe")]
        precover: Option<PathBuf>,
        #[arg(long, value_enum)]
        fpe: Option<FpeKind>,
    },
    /// Record flags, cover status and audits for every graph of a corpus.
    Sweep {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
        /// Output ndjson; stdout when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Seed for the completion order probe.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random visiting orders per path in the order probe (0 = off).
        #[arg(long, default_value_t = 0)]
        orders: usize,
    },
    /// Print a generated graph as graph6.
    #[command(group(ArgGroup::new("source").required(true).args(["bt", "pyramid", "named"])))]
    Gen {
        /// B(T) of the tree with these edges, e.g. `0-1,1-2,1-3`.
        #[arg(long)]
        bt: Option<String>,
        /// Pyramid path lengths, e.g. `1,2,2`.
        #[arg(long)]
        pyramid: Option<String>,
        /// A registry name such as `figure1` or `cycle(7)`.
        #[arg(long)]
        named: Option<String>,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("graph").required(true).args(["graph6", "file"])))]
struct GraphInput {
    /// A graph6 string.
    graph6: Option<String>,
    /// A graph6 file, one graph per line; `-` reads stdin.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DetectKind {
    Hole,
    EvenHole,
    SectorWheel,
    TwoJoin,
    StarCutset,
    CliqueCutset,
    Basic,
    Pyramid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FpeKind {
    Weak,
    Full,
}

/// Why a command stopped early; carries its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Failure(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
            CliError::Failure(_) => EXIT_FAILURE,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let result = match cli.command {
        Command::Detect { input, kind } => commands::detect(&input, kind),
        Command::Cover { input, trace, dot, no_peel, no_fallback } => {
            commands::cover(&input, trace.as_deref(), dot.as_deref(), !no_peel, !no_fallback)
        }
        Command::Verify { graph6, x1, x2, path, w1, w2 } => {
            commands::verify(&graph6, &x1, &x2, path.as_deref(), w1.as_deref(), w2.as_deref())
        }
        Command::Oracle { graph6, precover, fpe } => commands::oracle(&graph6, precover.as_deref(), fpe),
        Command::Sweep { corpus, max_n, jobs, report, seed, orders } => {
            commands::sweep(&corpus, max_n, jobs, report.as_deref(), seed, orders)
        }
        Command::Gen { bt, pyramid, named } => commands::gen(bt.as_deref(), pyramid.as_deref(), named.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let (CliError::Usage(m) | CliError::Data(m) | CliError::Failure(m)) = &e;
            eprintln!("chordcover: {m}");
            ExitCode::from(e.code())
        }
    }
}
