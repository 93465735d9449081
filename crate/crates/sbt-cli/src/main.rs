//! `sbt` — command-line front door to the sorting-by-transpositions
//! workbench: structural analysis, exact distances with verified
//! witnesses, verification suites, corpus generation, cycle-graph export,
//! and the palisade ratio table.
//!
//! Every command speaks both human text and `--json` with a stable
//! schema, and the two always carry the same numbers.  Exit codes are
//! part of the interface: 0 success, 1 verification failure or internal
//! error, 2 usage or parse error, 3 indeterminate (a node budget ran out
//! before an answer was proven), 4 capacity (instance too large for the
//! requested engine).

mod report;
mod verify;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sbt_core::bounds::BoundsReport;
use sbt_core::cycle_graph::CycleGraph;
use sbt_core::generators::{CorpusSpec, Family};
use sbt_core::search::{
    build_distance_table_seq, distance_via_table, exact_distance_ida_seq, DistanceTable,
    SearchResult, MAX_TABLE_SYMBOLS,
};
use sbt_core::structure::StructureReport;
use sbt_core::{Error, ExtendedPermutation};

use verify::Suite;

#[derive(Parser)]
#[command(
    name = "sbt",
    version,
    about = "Exact-search workbench for sorting permutations by transpositions",
    long_about = "Analyses permutations through the algebra of the extended cycle \
                  π̂ = (0 π1 … πn), computes exact transposition distances with \
                  replay-verified optimal witnesses, and runs the verification \
                  suites behind the library's headline bounds."
)]
struct Cli {
    /// Structured JSON on stdout instead of the text report.
    #[arg(long, global = true)]
    json: bool,

    /// Node-expansion budget for the iterative searches; hitting it exits 3.
    #[arg(long, global = true, value_name = "NODES", value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,

    /// Worker threads for distance-table building (1 forces the sequential
    /// builder; everything else in the CLI is single-threaded).
    #[arg(long, global = true, value_name = "N", default_value_t = default_threads(),
          value_parser = clap::value_parser!(u64).range(1..))]
    threads: u64,

    /// Seed for randomized generation; required whenever sampling happens.
    #[arg(long, global = true, value_name = "SEED")]
    seed: Option<u64>,

    /// Directory for cached distance tables (created on demand).
    #[arg(long, global = true, value_name = "DIR", default_value = ".sbt-cache")]
    cache_dir: PathBuf,

    /// Ignore cached tables: rebuild in memory and write nothing.
    #[arg(long, global = true)]
    no_cache: bool,

    #[command(subcommand)]
    command: Command,
}

fn default_threads() -> u64 {
    std::thread::available_parallelism().map_or(1, |p| p.get() as u64)
}

#[derive(Subcommand)]
enum Command {
    /// Classify σ̂π̂⁻¹: cycles, orientation, components, palisade test, and
    /// every bound the library knows.
    Analyze {
        /// One-line form, e.g. "[5 4 3 2 1]", or @FILE containing it.
        perm: String,
    },

    /// Exact transposition distance with an optimal move sequence; the
    /// witness is replayed against the input before anything is printed.
    Distance {
        /// One-line form, e.g. "[5 4 3 2 1]", or @FILE containing it.
        perm: String,
        /// table = breadth-first lookup (n + 1 ≤ 12); ida = memory-light
        /// iterative deepening; auto picks by size.
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },

    /// Run one of the recorded verification suites and report pass/fail.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Size parameter for the sweeping suites (td3, prop1, lemma1, chain).
        #[arg(long, value_name = "N")]
        n: Option<usize>,
    },

    /// Emit members of a named permutation family, one per line.
    Generate {
        #[arg(value_enum)]
        family: FamilyArg,
        /// Palisade width φ (palisade family only).
        #[arg(long, value_name = "PHI")]
        phi: Option<usize>,
        /// Number of genes n (every family except palisade).
        #[arg(long, value_name = "N")]
        n: Option<usize>,
        /// How many members: truncates enumerations, sizes random samples.
        #[arg(long, value_name = "K")]
        count: Option<usize>,
    },

    /// Build the cycle graph: a summary report, or Graphviz DOT via --dot.
    Graph {
        /// One-line form, e.g. "[5 4 3 2 1]", or @FILE containing it.
        perm: String,
        /// Write DOT here; "-" streams it to stdout instead of the report.
        #[arg(long, value_name = "PATH")]
        dot: Option<String>,
    },

    /// Distance-to-lower-bound ratio table for palisades, φ = 1..max.
    Ratio {
        #[arg(long, default_value_t = 8,
              value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
        max: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Table,
    Ida,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Palisade,
    DiametralMod3,
    AllCycles,
    #[value(name = "all-3perms")]
    All3Perms,
    RandomCycles,
}

impl From<FamilyArg> for Family {
    fn from(arg: FamilyArg) -> Family {
        match arg {
            FamilyArg::Palisade => Family::Palisade,
            FamilyArg::DiametralMod3 => Family::DiametralMod3,
            FamilyArg::AllCycles => Family::AllCycles,
            FamilyArg::All3Perms => Family::All3Perms,
            FamilyArg::RandomCycles => Family::RandomCycles,
        }
    }
}

/// A failure with its contract exit code; the message goes to stderr.
pub(crate) struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> CliError {
        CliError { code, message: message.into() }
    }

    /// Exit 1: a verification suite failed, or an internal invariant broke.
    pub fn failed(message: impl Into<String>) -> CliError {
        CliError::new(1, message)
    }

    /// Exit 2: the input could not be parsed or the parameters make no sense.
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError::new(2, message)
    }

    /// Exit 3: a node budget ran out before the question was settled.
    pub fn indeterminate(message: impl Into<String>) -> CliError {
        CliError::new(3, message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match &e {
            Error::Malformed(_) | Error::Domain(_) | Error::SizeMismatch { .. } => 2,
            Error::Capacity(_) => 4,
            _ => 1,
        };
        CliError::new(code, e.to_string())
    }
}

pub(crate) type CliResult<T> = Result<T, CliError>;

/// Global options every command can see.
pub(crate) struct Ctx {
    pub json: bool,
    pub budget: Option<u64>,
    pub threads: u64,
    pub seed: Option<u64>,
    pub cache_dir: PathBuf,
    pub no_cache: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !e.message.is_empty() {
                eprintln!("error: {}", e.message);
            }
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let ctx = Ctx {
        json: cli.json,
        budget: cli.budget,
        threads: cli.threads,
        seed: cli.seed,
        cache_dir: cli.cache_dir,
        no_cache: cli.no_cache,
    };
    match cli.command {
        Command::Analyze { perm } => cmd_analyze(&ctx, &perm),
        Command::Distance { perm, method } => cmd_distance(&ctx, &perm, method),
        Command::Verify { suite, n } => verify::run_suite(&ctx, suite, n),
        Command::Generate { family, phi, n, count } => cmd_generate(&ctx, family, phi, n, count),
        Command::Graph { perm, dot } => cmd_graph(&ctx, &perm, dot.as_deref()),
        Command::Ratio { max } => cmd_ratio(&ctx, max),
    }
}

/// Resolves the permutation argument: a literal one-line form, or `@path`
/// naming a file that holds one.
pub(crate) fn parse_perm_arg(arg: &str) -> CliResult<ExtendedPermutation> {
    let text = match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read permutation file {path}: {e}")))?,
        None => arg.to_string(),
    };
    Ok(ExtendedPermutation::parse_one_line(&text)?)
}

/// Fetches the n-gene distance table from the cache, or builds it (and
/// caches it, best-effort) when missing or unreadable.
pub(crate) fn load_or_build_table(ctx: &Ctx, n: usize) -> CliResult<DistanceTable> {
    let path = ctx.cache_dir.join(format!("table-n{n}.sbtdt"));
    if !ctx.no_cache && path.exists() {
        match DistanceTable::load(&path) {
            Ok(table) => return Ok(table),
            Err(e) => eprintln!(
                "note: cached table {} is unusable ({e}); rebuilding",
                path.display()
            ),
        }
    }
    let table = build_table(ctx, n)?;
    if !ctx.no_cache {
        let cached = fs::create_dir_all(&ctx.cache_dir)
            .map_err(Error::from)
            .and_then(|()| table.save(&path));
        if let Err(e) = cached {
            eprintln!("warning: could not cache the table at {}: {e}", path.display());
        }
    }
    Ok(table)
}

#[cfg(feature = "parallel")]
fn build_table(ctx: &Ctx, n: usize) -> CliResult<DistanceTable> {
    if ctx.threads > 1 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(ctx.threads as usize)
            .build_global();
        Ok(sbt_core::search::build_distance_table_par(n)?)
    } else {
        Ok(build_distance_table_seq(n)?)
    }
}

#[cfg(not(feature = "parallel"))]
fn build_table(ctx: &Ctx, n: usize) -> CliResult<DistanceTable> {
    if ctx.threads > 1 {
        eprintln!("note: built without the parallel feature; using the sequential builder");
    }
    Ok(build_distance_table_seq(n)?)
}

pub(crate) fn emit_json(doc: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(doc).expect("reports always serialize"));
}

fn cmd_analyze(ctx: &Ctx, perm: &str) -> CliResult<()> {
    let pi = parse_perm_arg(perm)?;
    let structure = StructureReport::of(&pi);
    let bounds = BoundsReport::from_structure(&pi, &structure);
    if ctx.json {
        emit_json(&serde_json::json!({
            "permutation": pi.one_line_string(),
            "pi_hat": pi.cycle_string(),
            "sigma_pi_inv": pi.sigma_pi_inv().cycle_decomposition().to_string_with_fixed(),
            "structure": structure,
            "bounds": bounds,
        }));
    } else {
        print!("{}", report::render_analysis(&pi, &structure, &bounds));
    }
    Ok(())
}

fn cmd_distance(ctx: &Ctx, perm: &str, method: MethodArg) -> CliResult<()> {
    let pi = parse_perm_arg(perm)?;
    let method = if method == MethodArg::Auto {
        if pi.size() <= MAX_TABLE_SYMBOLS {
            MethodArg::Table
        } else {
            MethodArg::Ida
        }
    } else {
        method
    };
    let result = match method {
        MethodArg::Table => {
            let table = load_or_build_table(ctx, pi.n())?;
            distance_via_table(&table, &pi)?
        }
        MethodArg::Ida => exact_distance_ida_seq(&pi, ctx.budget),
        MethodArg::Auto => unreachable!("auto was resolved above"),
    };
    if !result.complete {
        if ctx.json {
            emit_json(&serde_json::json!({
                "permutation": pi.one_line_string(),
                "result": result,
            }));
        } else {
            print!("{}", report::render_indeterminate(&pi, &result));
        }
        return Err(CliError::indeterminate(format!(
            "node budget exhausted after {} expansions; only distance ≥ {} is proven",
            result.nodes_expanded, result.distance
        )));
    }
    let steps = replay_witness(&pi, &result)?;
    if ctx.json {
        emit_json(&serde_json::json!({
            "permutation": pi.one_line_string(),
            "result": result,
        }));
    } else {
        print!("{}", report::render_distance(&pi, &result, &steps));
    }
    Ok(())
}

/// Applies the witness to the queried permutation and demands it land on
/// the identity in exactly `distance` moves.  Returns the intermediate
/// one-line forms for the text report.
fn replay_witness(pi: &ExtendedPermutation, result: &SearchResult) -> CliResult<Vec<String>> {
    let mut current = pi.clone();
    let mut steps = Vec::with_capacity(result.witness.len());
    for tau in &result.witness {
        current = current
            .apply(tau)
            .map_err(|e| CliError::failed(format!("witness move {tau} failed to replay: {e}")))?;
        steps.push(current.one_line_string());
    }
    if !current.is_identity() || result.witness.len() != result.distance {
        return Err(CliError::failed(
            "witness replay did not reach the identity in the reported number of moves",
        ));
    }
    Ok(steps)
}

fn cmd_generate(
    ctx: &Ctx,
    family: FamilyArg,
    phi: Option<usize>,
    n: Option<usize>,
    count: Option<usize>,
) -> CliResult<()> {
    let spec = CorpusSpec { family: family.into(), n, phi, seed: ctx.seed, count };
    let members = spec.generate()?;
    if ctx.json {
        let perms: Vec<String> = members.map(|p| p.one_line_string()).collect();
        emit_json(&serde_json::json!({
            "family": spec.family.to_string(),
            "n": spec.n,
            "phi": spec.phi,
            "seed": spec.seed,
            "count": perms.len(),
            "permutations": perms,
        }));
    } else {
        for p in members {
            println!("{}", p.one_line_string());
        }
    }
    Ok(())
}

fn cmd_graph(ctx: &Ctx, perm: &str, dot: Option<&str>) -> CliResult<()> {
    let pi = parse_perm_arg(perm)?;
    let graph = CycleGraph::of(&pi);
    let mut dot_written = None;
    match dot {
        Some("-") => {
            print!("{}", graph.to_dot());
            return Ok(());
        }
        Some(path) => {
            fs::write(path, graph.to_dot())
                .map_err(|e| CliError::failed(format!("cannot write {path}: {e}")))?;
            dot_written = Some(path.to_string());
        }
        None => {}
    }
    if ctx.json {
        emit_json(&serde_json::json!({
            "permutation": pi.one_line_string(),
            "graph": graph,
            "dot_written": dot_written,
        }));
    } else {
        print!("{}", report::render_graph(&pi, &graph));
        if let Some(path) = dot_written {
            println!("DOT written to {path}");
        }
    }
    Ok(())
}

fn cmd_ratio(ctx: &Ctx, max: usize) -> CliResult<()> {
    let rows: Vec<report::RatioRow> = (1..=max).map(report::RatioRow::at).collect();
    if ctx.json {
        let floor = rows.iter().min_by(|a, b| a.cmp_ratio(b)).expect("max ≥ 1");
        emit_json(&serde_json::json!({
            "rows": rows,
            "floor": { "num": floor.num, "den": floor.den },
        }));
    } else {
        print!("{}", report::render_ratio(&rows));
    }
    Ok(())
}
