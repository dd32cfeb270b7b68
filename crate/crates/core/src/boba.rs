//! Bi-directional orchestration.
//!
//! A forward engine in `(f1, f2)` order and a backward engine in `(f2, f1)`
//! order run side by side. Each owns one bound cell (`g2min(goal)` forward,
//! `g1min(start)` backward) and reads the other's to terminate; each tunes
//! the other's secondary heuristic on first expansions. Stale reads of
//! either only cost pruning power.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use crate::cost::{Cost, CostPair, ObjectiveOrder, INF};
use crate::error::Result;
use crate::front::{FrontEntry, ParetoFront};
use crate::graph::{BiGraph, StateId};
use crate::heuristics::{compute_all_heuristics, HeuristicSet, TreeSide};
use crate::pathstore::LiveGauge;
use crate::pqueue::QueueMode;
use crate::search::{atomic_costs, Backtrack, Direction, Engine, EngineConfig, EngineLinks, SearchMetrics, TraceEvent};

/// The two global bounds, each lowered only by its owning engine.
#[derive(Debug)]
pub struct SharedBounds {
    ub1: AtomicU64,
    ub2: AtomicU64,
}

impl Default for SharedBounds {
    fn default() -> Self {
        SharedBounds { ub1: AtomicU64::new(INF), ub2: AtomicU64::new(INF) }
    }
}

impl SharedBounds {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ub1(&self) -> Cost {
        self.ub1.load(Ordering::Relaxed)
    }

    pub fn ub2(&self) -> Cost {
        self.ub2.load(Ordering::Relaxed)
    }

    /// Lower-or-keep update; returns the value in effect afterwards.
    pub fn lower_ub1(&self, v: Cost) -> Cost {
        self.ub1.fetch_min(v, Ordering::Relaxed).min(v)
    }

    pub fn lower_ub2(&self, v: Cost) -> Cost {
        self.ub2.fetch_min(v, Ordering::Relaxed).min(v)
    }

    pub fn snapshot(&self) -> CostPair {
        CostPair::new(self.ub1(), self.ub2())
    }
}

/// Heuristic arrays the engines tune for each other: `h1'` (start side,
/// written forward) and `h2` (goal side, written backward).
#[derive(Debug)]
pub struct TuningChannel {
    h1_from_start: Vec<AtomicU64>,
    h2_to_goal: Vec<AtomicU64>,
}

impl TuningChannel {
    pub fn new(heuristics: &HeuristicSet) -> Self {
        TuningChannel {
            h1_from_start: atomic_costs(
                heuristics.tree(TreeSide::FromStart, ObjectiveOrder::FirstSecond).primary_values(),
            ),
            h2_to_goal: atomic_costs(heuristics.tree(TreeSide::ToGoal, ObjectiveOrder::SecondFirst).primary_values()),
        }
    }

    pub fn h1_from_start(&self, s: StateId) -> Cost {
        self.h1_from_start[s as usize].load(Ordering::Relaxed)
    }

    pub fn h2_to_goal(&self, s: StateId) -> Cost {
        self.h2_to_goal[s as usize].load(Ordering::Relaxed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Threads {
    /// Both engines interleaved pop by pop on the calling thread.
    #[default]
    One,
    /// One thread per engine.
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BobaConfig {
    pub threads: Threads,
    pub queue: QueueMode,
    pub tuning: bool,
    pub backtrack: Backtrack,
    pub paths: bool,
    pub trace: bool,
}

impl Default for BobaConfig {
    fn default() -> Self {
        BobaConfig {
            threads: Threads::One,
            queue: QueueMode::Bucket,
            tuning: true,
            backtrack: Backtrack::Compact,
            paths: true,
            trace: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BobaRun {
    pub front: ParetoFront,
    pub forward: SearchMetrics,
    pub backward: SearchMetrics,
    /// Peak of the combined live record count of both engines.
    pub peak_live: usize,
    pub forward_solutions: Vec<CostPair>,
    pub backward_solutions: Vec<CostPair>,
    pub forward_trace: Vec<TraceEvent>,
    pub backward_trace: Vec<TraceEvent>,
    pub final_bounds: CostPair,
    pub heuristics_time: Duration,
    pub search_time: Duration,
}

impl BobaRun {
    pub fn metrics(&self) -> SearchMetrics {
        let mut m = self.forward.combine(&self.backward);
        m.peak_live = self.peak_live;
        m
    }
}

/// Full query: preliminary heuristics, then both engines. An unreachable
/// goal yields an empty front.
pub fn boba(graph: &BiGraph, start: StateId, goal: StateId, config: &BobaConfig) -> Result<BobaRun> {
    let t0 = Instant::now();
    let heuristics = compute_all_heuristics(graph, start, goal, config.threads == Threads::Two)?;
    let heuristics_time = t0.elapsed();
    let Some(heuristics) = heuristics else {
        return Ok(BobaRun {
            front: ParetoFront::default(),
            forward: SearchMetrics::default(),
            backward: SearchMetrics::default(),
            peak_live: 0,
            forward_solutions: Vec::new(),
            backward_solutions: Vec::new(),
            forward_trace: Vec::new(),
            backward_trace: Vec::new(),
            final_bounds: CostPair::INF,
            heuristics_time,
            search_time: Duration::ZERO,
        });
    };
    let mut run = boba_with_heuristics(graph, &heuristics, config)?;
    run.heuristics_time = heuristics_time;
    Ok(run)
}

/// Main phase on precomputed heuristics.
pub fn boba_with_heuristics(graph: &BiGraph, heuristics: &HeuristicSet, config: &BobaConfig) -> Result<BobaRun> {
    let t0 = Instant::now();
    let bounds = SharedBounds::new();
    let channel = TuningChannel::new(heuristics);
    let gauge = LiveGauge::new();

    let engine_config = |direction, order| EngineConfig {
        direction,
        order,
        queue: config.queue,
        enhanced: true,
        backtrack: config.backtrack,
        seed_partner_bound: false,
        trace: config.trace,
    };
    let forward_links = EngineLinks {
        own_bound: &bounds.ub2,
        partner_bound: &bounds.ub1,
        secondary_h: &channel.h2_to_goal,
        tuning_sink: config.tuning.then_some(channel.h1_from_start.as_slice()),
        gauge: Some(&gauge),
    };
    let backward_links = EngineLinks {
        own_bound: &bounds.ub1,
        partner_bound: &bounds.ub2,
        secondary_h: &channel.h1_from_start,
        tuning_sink: config.tuning.then_some(channel.h2_to_goal.as_slice()),
        gauge: Some(&gauge),
    };
    let mut forward =
        Engine::new(graph, heuristics, engine_config(Direction::Forward, ObjectiveOrder::FirstSecond), forward_links);
    let mut backward =
        Engine::new(graph, heuristics, engine_config(Direction::Backward, ObjectiveOrder::SecondFirst), backward_links);

    match config.threads {
        Threads::One => loop {
            let f = forward.step();
            let b = backward.step();
            if !f && !b {
                break;
            }
        },
        Threads::Two => {
            backward = std::thread::scope(|scope| {
                let handle = scope.spawn(move || {
                    backward.run();
                    backward
                });
                forward.run();
                handle.join().expect("backward search panicked")
            });
        }
    }
    let search_time = t0.elapsed();

    let fwd: Vec<(CostPair, usize, usize)> =
        forward.solutions().iter().enumerate().map(|(i, s)| (forward.solution_cost(s), 0, i)).collect();
    let bwd: Vec<(CostPair, usize, usize)> =
        backward.solutions().iter().enumerate().map(|(i, s)| (backward.solution_cost(s), 1, i)).collect();
    let merged = merge_fronts_by(fwd.iter().copied().chain(bwd.iter().copied()), |e| e.0);

    let engines = [&forward, &backward];
    let entries = merged
        .into_iter()
        .map(|(cost, which, idx)| {
            let path = if config.paths {
                let engine = engines[which];
                let sol = engine.solutions().iter().nth(idx).expect("index from the same list");
                Some(engine.solution_path(sol)?)
            } else {
                None
            };
            Ok(FrontEntry { cost, path })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(BobaRun {
        front: ParetoFront { entries },
        forward: forward.metrics(),
        backward: backward.metrics(),
        peak_live: gauge.peak(),
        forward_solutions: fwd.iter().map(|e| e.0).collect(),
        backward_solutions: bwd.iter().map(|e| e.0).collect(),
        forward_trace: forward.trace().to_vec(),
        backward_trace: backward.trace().to_vec(),
        final_bounds: bounds.snapshot(),
        heuristics_time: Duration::ZERO,
        search_time,
    })
}

/// Union of two solution lists as a strict front: sorted by `c1`, equal
/// costs collapsed (first occurrence wins) and weakly dominated entries
/// removed.
pub fn merge_fronts(forward: &[CostPair], backward: &[CostPair]) -> Vec<CostPair> {
    merge_fronts_by(forward.iter().chain(backward).copied(), |c| *c)
}

fn merge_fronts_by<T, F>(items: impl IntoIterator<Item = T>, cost: F) -> Vec<T>
where
    F: Fn(&T) -> CostPair,
{
    let mut all: Vec<T> = items.into_iter().collect();
    all.sort_by_key(|e| cost(e));
    let mut out: Vec<T> = Vec::with_capacity(all.len());
    for e in all {
        if out.last().is_none_or(|last| cost(&e).c2 < cost(last).c2) {
            out.push(e);
        }
    }
    out
}
