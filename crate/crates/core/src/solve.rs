//! One entry point over all algorithms, with run metrics.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::boba::{boba_with_heuristics, BobaConfig, Threads};
use crate::cost::{CostPair, ObjectiveOrder};
use crate::error::{Error, Result};
use crate::front::{FrontEntry, ParetoFront};
use crate::graph::{BiGraph, StateId};
use crate::heuristics::compute_all_heuristics;
use crate::oracle::pareto_oracle;
use crate::pathstore::PathEntry;
use crate::pqueue::QueueMode;
use crate::search::{run_unidirectional, Backtrack, Direction, EngineConfig, SearchMetrics, SearchNode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Algorithm {
    Oracle,
    Boa,
    BoaEnh,
    #[default]
    Boba,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Oracle, Algorithm::Boa, Algorithm::BoaEnh, Algorithm::Boba];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Oracle => "oracle",
            Algorithm::Boa => "boa",
            Algorithm::BoaEnh => "boa-enh",
            Algorithm::Boba => "boba",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown algorithm `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveConfig {
    pub algorithm: Algorithm,
    /// Uni-directional engines only.
    pub order: ObjectiveOrder,
    /// Uni-directional engines only.
    pub direction: Direction,
    pub queue: QueueMode,
    /// BOBA* only; also parallelises the preliminary phases.
    pub threads: Threads,
    /// BOBA* only.
    pub tuning: bool,
    pub backtrack: Backtrack,
    pub paths: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            algorithm: Algorithm::Boba,
            order: ObjectiveOrder::FirstSecond,
            direction: Direction::Forward,
            queue: QueueMode::Bucket,
            threads: Threads::One,
            tuning: true,
            backtrack: Backtrack::Compact,
            paths: false,
        }
    }
}

/// Per-query report; node counts are summed over both engines for BOBA*.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RunMetrics {
    pub algorithm: Algorithm,
    pub wall_ms: f64,
    pub heuristics_ms: f64,
    pub solutions: usize,
    pub generated: u64,
    pub expanded: u64,
    pub pruned: u64,
    pub peak_open: usize,
    pub peak_live: usize,
    pub pathstore_entries: usize,
    pub pool_reuse: u64,
    /// Peak live node records plus path-store entries, in bytes.
    pub memory_bytes: usize,
}

impl RunMetrics {
    fn from_search(algorithm: Algorithm, m: &SearchMetrics, solutions: usize) -> RunMetrics {
        RunMetrics {
            algorithm,
            wall_ms: 0.0,
            heuristics_ms: 0.0,
            solutions,
            generated: m.generated,
            expanded: m.expanded,
            pruned: m.pruned(),
            peak_open: m.peak_open,
            peak_live: m.peak_live,
            pathstore_entries: m.pathstore_entries,
            pool_reuse: m.pool_reuse,
            memory_bytes: m.peak_live * size_of::<SearchNode>() + m.pathstore_entries * size_of::<PathEntry>(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub front: ParetoFront,
    pub metrics: RunMetrics,
}

fn ms(d: std::time::Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Answers one query. `start == goal` yields the empty path `(0, 0)`; an
/// unreachable goal yields an empty front.
pub fn solve(graph: &BiGraph, start: StateId, goal: StateId, config: &SolveConfig) -> Result<SolveOutcome> {
    graph.check_state(start as usize)?;
    graph.check_state(goal as usize)?;
    let t0 = Instant::now();
    let algorithm = config.algorithm;

    if start == goal {
        let front =
            ParetoFront { entries: vec![FrontEntry { cost: CostPair::ZERO, path: config.paths.then(|| vec![start]) }] };
        let metrics = RunMetrics { algorithm, solutions: 1, wall_ms: ms(t0.elapsed()), ..Default::default() };
        return Ok(SolveOutcome { front, metrics });
    }

    if algorithm == Algorithm::Oracle {
        let front = pareto_oracle(graph, start, goal);
        let metrics = RunMetrics { algorithm, solutions: front.len(), wall_ms: ms(t0.elapsed()), ..Default::default() };
        return Ok(SolveOutcome { front, metrics });
    }

    let heuristics = compute_all_heuristics(graph, start, goal, config.threads == Threads::Two)?;
    let heuristics_ms = ms(t0.elapsed());
    let Some(heuristics) = heuristics else {
        let metrics = RunMetrics { algorithm, heuristics_ms, wall_ms: heuristics_ms, ..Default::default() };
        return Ok(SolveOutcome { front: ParetoFront::default(), metrics });
    };

    let (front, search) = match algorithm {
        Algorithm::Boa | Algorithm::BoaEnh => {
            let engine = EngineConfig {
                direction: config.direction,
                order: config.order,
                queue: config.queue,
                enhanced: algorithm == Algorithm::BoaEnh,
                backtrack: config.backtrack,
                seed_partner_bound: false,
                trace: false,
            };
            let run = run_unidirectional(graph, &heuristics, engine, config.paths)?;
            (run.front, run.metrics)
        }
        Algorithm::Boba => {
            let boba = BobaConfig {
                threads: config.threads,
                queue: config.queue,
                tuning: config.tuning,
                backtrack: config.backtrack,
                paths: config.paths,
                trace: false,
            };
            let run = boba_with_heuristics(graph, &heuristics, &boba)?;
            let metrics = run.metrics();
            (run.front, metrics)
        }
        Algorithm::Oracle => unreachable!("handled above"),
    };
    let mut metrics = RunMetrics::from_search(algorithm, &search, front.len());
    metrics.heuristics_ms = heuristics_ms;
    metrics.wall_ms = ms(t0.elapsed());
    Ok(SolveOutcome { front, metrics })
}
