//! Command-line front end.
//!
//! Exit codes: 0 success, 1 runtime failure (I/O, parse, mismatch), 2 usage.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boba::Threads;
use crate::cost::ObjectiveOrder;
use crate::error::{Error, Result};
use crate::front::is_strict_front;
use crate::graph::{build_bigraph, read_dimacs_gr, BiGraph, StateId};
use crate::heuristics::compute_all_heuristics;
use crate::oracle::pareto_oracle;
use crate::pqueue::QueueMode;
use crate::search::{Backtrack, Direction};
use crate::solve::{solve, Algorithm, RunMetrics, SolveConfig};

#[derive(Parser, Debug)]
#[command(name = "boba", version, about = "Bi-objective point-to-point shortest paths")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the Pareto front of one query.
    Solve(SolveArgs),
    /// Run many queries and write one CSV row of metrics per query.
    Bench(BenchArgs),
    /// Generate random distinct start-goal pairs.
    GenPairs(GenPairsArgs),
    /// Check an algorithm's front against the brute-force oracle.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// DIMACS .gr file of the first objective (e.g. distance).
    #[arg(long)]
    pub gr1: PathBuf,
    /// DIMACS .gr file of the second objective (e.g. time), same arc order.
    #[arg(long)]
    pub gr2: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgArg {
    Oracle,
    Boa,
    BoaEnh,
    Boba,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    #[value(name = "12")]
    FirstSecond,
    #[value(name = "21")]
    SecondFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Fwd,
    Bwd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QueueArg {
    Bucket,
    Heap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ThreadsArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BacktrackArg {
    Compact,
    Conventional,
}

#[derive(Args, Debug, Clone)]
pub struct EngineArgs {
    #[arg(long, value_enum, default_value = "boba")]
    pub alg: AlgArg,
    /// Objective order of a uni-directional search.
    #[arg(long, value_enum, default_value = "12")]
    pub order: OrderArg,
    /// Direction of a uni-directional search.
    #[arg(long, value_enum, default_value = "fwd")]
    pub direction: DirectionArg,
    #[arg(long, value_enum, default_value = "bucket")]
    pub queue: QueueArg,
    #[arg(long, value_enum, default_value = "1")]
    pub threads: ThreadsArg,
    /// Mutual heuristic tuning between the two BOBA* searches.
    #[arg(long, value_enum, default_value = "on")]
    pub tuning: Switch,
    #[arg(long, value_enum, default_value = "compact")]
    pub backtrack: BacktrackArg,
}

impl EngineArgs {
    pub fn config(&self, paths: bool) -> SolveConfig {
        SolveConfig {
            algorithm: match self.alg {
                AlgArg::Oracle => Algorithm::Oracle,
                AlgArg::Boa => Algorithm::Boa,
                AlgArg::BoaEnh => Algorithm::BoaEnh,
                AlgArg::Boba => Algorithm::Boba,
            },
            order: match self.order {
                OrderArg::FirstSecond => ObjectiveOrder::FirstSecond,
                OrderArg::SecondFirst => ObjectiveOrder::SecondFirst,
            },
            direction: match self.direction {
                DirectionArg::Fwd => Direction::Forward,
                DirectionArg::Bwd => Direction::Backward,
            },
            queue: match self.queue {
                QueueArg::Bucket => QueueMode::Bucket,
                QueueArg::Heap => QueueMode::Heap,
            },
            threads: match self.threads {
                ThreadsArg::One => Threads::One,
                ThreadsArg::Two => Threads::Two,
            },
            tuning: self.tuning == Switch::On,
            backtrack: match self.backtrack {
                BacktrackArg::Compact => Backtrack::Compact,
                BacktrackArg::Conventional => Backtrack::Conventional,
            },
            paths,
        }
    }
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// 1-based start state.
    #[arg(long)]
    pub source: u64,
    /// 1-based goal state.
    #[arg(long)]
    pub target: u64,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Emit a `p` line with the state sequence after each solution.
    #[arg(long)]
    pub paths: bool,
    /// Output file (stdout if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the preliminary bounds (`id h1 h2 ub1 ub2` per state).
    #[arg(long)]
    pub dump_heuristics: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// One `<src> <dst>` pair per line, 1-based.
    #[arg(long)]
    pub pairs: PathBuf,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// CSV output file (stdout if omitted).
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GenPairsArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub n_states: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub count: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub source: u64,
    #[arg(long)]
    pub target: u64,
    #[command(flatten)]
    pub engine: EngineArgs,
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 { write!(stdout, "{}", e.render()) } else { write!(stderr, "{}", e.render()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(&a, stdout),
        Command::Bench(a) => cmd_bench(&a, stdout),
        Command::GenPairs(a) => cmd_gen_pairs(&a, stdout),
        Command::Verify(a) => cmd_verify(&a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

fn load_graph(args: &GraphArgs) -> Result<BiGraph> {
    let first = read_dimacs_gr(&args.gr1)?;
    let second = read_dimacs_gr(&args.gr2)?;
    build_bigraph(&first, &second)
}

fn state_id(graph: &BiGraph, one_based: u64) -> Result<StateId> {
    if one_based == 0 {
        return Err(Error::InvalidArgument("state ids are 1-based".into()));
    }
    graph.check_state((one_based - 1) as usize)
}

fn output(path: Option<&Path>, stdout: &mut dyn Write, body: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            body(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => body(stdout),
    }
}

pub fn cmd_solve(args: &SolveArgs, stdout: &mut dyn Write) -> Result<i32> {
    let graph = load_graph(&args.graph)?;
    let start = state_id(&graph, args.source)?;
    let goal = state_id(&graph, args.target)?;
    if let Some(path) = &args.dump_heuristics {
        if let Some(h) = compute_all_heuristics(&graph, start, goal, false)? {
            h.write_dump(BufWriter::new(File::create(path)?))?;
        }
    }
    let outcome = solve(&graph, start, goal, &args.engine.config(args.paths))?;
    output(args.out.as_deref(), stdout, |w| outcome.front.write(w, args.paths))?;
    Ok(0)
}

/// Reads a pairs file into 1-based `(src, dst)` tuples.
pub fn read_pairs(path: &Path) -> Result<Vec<(u64, u64)>> {
    let reader = BufReader::new(File::open(path)?);
    let mut pairs = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        match fields.as_slice() {
            [] => {}
            [a, b] => {
                let parse = |f: &str| {
                    f.parse::<u64>().map_err(|_| Error::Parse { line: idx + 1, message: format!("invalid id `{f}`") })
                };
                pairs.push((parse(a)?, parse(b)?));
            }
            _ => return Err(Error::Parse { line: idx + 1, message: "expected `<src> <dst>`".into() }),
        }
    }
    Ok(pairs)
}

pub const BENCH_HEADER: [&str; 16] = [
    "pair",
    "src",
    "dst",
    "algorithm",
    "wall_ms",
    "heuristics_ms",
    "solutions",
    "generated",
    "expanded",
    "pruned",
    "peak_open",
    "peak_live",
    "pathstore_entries",
    "pool_reuse",
    "memory_bytes",
    "threads",
];

fn numeric_fields(m: &RunMetrics) -> [f64; 11] {
    [
        m.wall_ms,
        m.heuristics_ms,
        m.solutions as f64,
        m.generated as f64,
        m.expanded as f64,
        m.pruned as f64,
        m.peak_open as f64,
        m.peak_live as f64,
        m.pathstore_entries as f64,
        m.pool_reuse as f64,
        m.memory_bytes as f64,
    ]
}

pub fn cmd_bench(args: &BenchArgs, stdout: &mut dyn Write) -> Result<i32> {
    let graph = load_graph(&args.graph)?;
    let pairs = read_pairs(&args.pairs)?;
    let config = args.engine.config(false);
    let threads = if config.threads == Threads::Two { "2" } else { "1" };
    let mut rows = Vec::with_capacity(pairs.len());
    for &(src, dst) in &pairs {
        let start = state_id(&graph, src)?;
        let goal = state_id(&graph, dst)?;
        rows.push(solve(&graph, start, goal, &config)?.metrics);
    }
    output(args.csv.as_deref(), stdout, |w| {
        let mut csv = csv::Writer::from_writer(w);
        csv.write_record(BENCH_HEADER).map_err(csv_error)?;
        for (i, (m, &(src, dst))) in rows.iter().zip(&pairs).enumerate() {
            let mut record = vec![(i + 1).to_string(), src.to_string(), dst.to_string(), m.algorithm.to_string()];
            record.extend(numeric_fields(m).iter().map(|v| format_number(*v)));
            record.push(threads.to_string());
            csv.write_record(&record).map_err(csv_error)?;
        }
        if !rows.is_empty() {
            let columns: Vec<[f64; 11]> = rows.iter().map(numeric_fields).collect();
            for label in ["min", "avg", "max"] {
                let mut record = vec![label.to_string(), String::new(), String::new(), config.algorithm.to_string()];
                for c in 0..11 {
                    let values = columns.iter().map(|r| r[c]);
                    let v = match label {
                        "min" => values.fold(f64::INFINITY, f64::min),
                        "max" => values.fold(f64::NEG_INFINITY, f64::max),
                        _ => values.sum::<f64>() / columns.len() as f64,
                    };
                    record.push(format_number(v));
                }
                record.push(threads.to_string());
                csv.write_record(&record).map_err(csv_error)?;
            }
        }
        csv.flush()?;
        Ok(())
    })?;
    Ok(0)
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

fn format_number(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v:.3}")
    }
}

/// `count` uniformly drawn pairs of distinct ids in `1..=n`.
pub fn generate_pairs(n: u64, count: u64, seed: u64) -> Vec<(u64, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let src = rng.random_range(1..=n);
            let mut dst = rng.random_range(1..n);
            if dst >= src {
                dst += 1;
            }
            (src, dst)
        })
        .collect()
}

pub fn cmd_gen_pairs(args: &GenPairsArgs, stdout: &mut dyn Write) -> Result<i32> {
    let pairs = generate_pairs(args.n_states, args.count, args.seed);
    output(args.out.as_deref(), stdout, |w| {
        for (a, b) in pairs {
            writeln!(w, "{a} {b}")?;
        }
        Ok(())
    })?;
    Ok(0)
}

pub fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write) -> Result<i32> {
    let graph = load_graph(&args.graph)?;
    let start = state_id(&graph, args.source)?;
    let goal = state_id(&graph, args.target)?;
    let config = args.engine.config(true);
    let outcome = solve(&graph, start, goal, &config)?;
    let expected =
        if start == goal { vec![crate::cost::CostPair::ZERO] } else { pareto_oracle(&graph, start, goal).costs() };
    let got = outcome.front.costs();
    let mut ok = true;
    if got != expected {
        ok = false;
        writeln!(stdout, "front mismatch: {} gave {got:?}, oracle {expected:?}", config.algorithm)?;
    }
    if !is_strict_front(&got) {
        ok = false;
        writeln!(stdout, "front is not strictly ordered")?;
    }
    for e in &outcome.front.entries {
        let admitted = e
            .path
            .as_ref()
            .is_some_and(|p| p.first() == Some(&start) && p.last() == Some(&goal) && graph.path_admits_cost(p, e.cost));
        if !admitted {
            ok = false;
            writeln!(stdout, "path of solution ({}, {}) does not re-sum to its cost", e.cost.c1, e.cost.c2)?;
        }
    }
    if ok {
        writeln!(stdout, "ok: {} solutions match the oracle", got.len())?;
        Ok(0)
    } else {
        Ok(1)
    }
}
