//! Uni-directional bi-objective engines.
//!
//! One resumable [`Engine`] covers both the baseline BOA* loop and the
//! enhanced variant (termination by the partner's bound, secondary heuristic
//! tuning, early solution update with terminal-node skipping, and pruning by
//! the primary bound). It runs forward (`start -> goal`) or backward on the
//! reversed graph, in either objective order; internally every cost is held
//! as a `(primary, secondary)` [`Lex`] pair.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::cost::{add_cost, Cost, CostPair, Lex, ObjectiveOrder, INF};
use crate::error::{Error, Result};
use crate::front::{FrontEntry, ParetoFront};
use crate::graph::{ArcId, BiGraph, GraphView, StateId, NO_ARC};
use crate::heuristics::{HeuristicSet, ShortestPathTree, TreeSide};
use crate::pathstore::{LiveGauge, NodePool, ParentLink, PathStore};
use crate::pqueue::{Frontier, QueueMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Direction {
    /// From the start towards the goal on the forward graph.
    #[default]
    Forward,
    /// From the goal towards the start on the reversed graph.
    Backward,
}

impl Direction {
    pub fn opposite(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    /// Side of the query the search is heading for.
    fn target_side(self) -> TreeSide {
        match self {
            Direction::Forward => TreeSide::ToGoal,
            Direction::Backward => TreeSide::FromStart,
        }
    }

    fn origin_side(self) -> TreeSide {
        self.opposite().target_side()
    }
}

/// How solution paths are backtracked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Backtrack {
    /// Per-state `(arc, path id)` arrays; node records are recycled on pop.
    #[default]
    Compact,
    /// Every node record is retained and carries a parent pointer.
    Conventional,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub direction: Direction,
    pub order: ObjectiveOrder,
    pub queue: QueueMode,
    pub enhanced: bool,
    pub backtrack: Backtrack,
    /// Uni-directional enhanced runs only: start the partner bound at the
    /// preliminary global bound and append the opposite extreme solution
    /// after the main loop.
    pub seed_partner_bound: bool,
    pub trace: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            direction: Direction::Forward,
            order: ObjectiveOrder::FirstSecond,
            queue: QueueMode::Bucket,
            enhanced: true,
            backtrack: Backtrack::Compact,
            seed_partner_bound: false,
            trace: false,
        }
    }
}

/// Cells an engine shares with its surroundings.
#[derive(Clone, Copy, Debug)]
pub struct EngineLinks<'a> {
    /// This engine's secondary bound (`g2min(goal)` for a forward search).
    pub own_bound: &'a AtomicU64,
    /// The partner's primary bound (`g1min(start)` for a forward search).
    pub partner_bound: &'a AtomicU64,
    /// Secondary heuristic values, possibly tuned by the partner.
    pub secondary_h: &'a [AtomicU64],
    /// Where first-expansion primary costs are published for the partner.
    pub tuning_sink: Option<&'a [AtomicU64]>,
    pub gauge: Option<&'a LiveGauge>,
}

/// Atomic copy of a cost array.
pub fn atomic_costs(values: &[Cost]) -> Vec<AtomicU64> {
    values.iter().map(|&v| AtomicU64::new(v)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchNode {
    pub state: StateId,
    pub g: Lex,
    pub f: Lex,
    /// Arc from the parent state, [`NO_ARC`] at the origin.
    pub parent_arc: ArcId,
    /// Parent path id (compact) or parent pool slot (conventional).
    pub parent_link: u32,
}

/// How a solution's path is recovered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionSource {
    /// Node accepted at `state`; `link` is a path id (compact) or a pool slot
    /// (conventional). When `state` is not the target the complementary
    /// tree path is appended.
    Node { state: StateId, link: u32 },
    /// Path of the target-side secondary tree from the origin.
    SecondaryTree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Solution {
    /// Cost in the engine's `(primary, secondary)` terms.
    pub key: Lex,
    pub source: SolutionSource,
}

/// Append-only solution list; only the last element may still be replaced.
#[derive(Clone, Debug, Default)]
pub struct SolutionList {
    items: Vec<Solution>,
}

impl SolutionList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, solution: Solution) {
        self.items.push(solution);
    }

    pub fn last(&self) -> Option<&Solution> {
        self.items.last()
    }

    pub fn remove_last(&mut self) -> Option<Solution> {
        self.items.pop()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Solution> {
        self.items.iter()
    }
}

/// Drops the last solution iff it has the same primary cost as the one about
/// to be added. Returns the removed solution.
///
/// Pop order guarantees the last primary never exceeds `new_primary`, and the
/// newcomer is known to have a smaller secondary cost.
pub fn last_solution_check(list: &mut SolutionList, new_primary: Cost) -> Option<Solution> {
    match list.last() {
        Some(last) if last.key.primary == new_primary => list.remove_last(),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchMetrics {
    /// Node records created (origin included).
    pub generated: u64,
    /// Popped nodes that survived pruning; one path-store entry each.
    pub expanded: u64,
    /// Expanded nodes whose successors were enumerated.
    pub successor_scans: u64,
    pub pruned_at_pop: u64,
    pub pruned_at_generation: u64,
    pub terminal_skips: u64,
    pub early_solutions: u64,
    pub tuning_writes: u64,
    pub peak_open: usize,
    pub peak_live: usize,
    pub pool_reuse: u64,
    pub pathstore_entries: usize,
}

impl SearchMetrics {
    pub fn pruned(&self) -> u64 {
        self.pruned_at_pop + self.pruned_at_generation
    }

    pub fn combine(&self, other: &SearchMetrics) -> SearchMetrics {
        SearchMetrics {
            generated: self.generated + other.generated,
            expanded: self.expanded + other.expanded,
            successor_scans: self.successor_scans + other.successor_scans,
            pruned_at_pop: self.pruned_at_pop + other.pruned_at_pop,
            pruned_at_generation: self.pruned_at_generation + other.pruned_at_generation,
            terminal_skips: self.terminal_skips + other.terminal_skips,
            early_solutions: self.early_solutions + other.early_solutions,
            tuning_writes: self.tuning_writes + other.tuning_writes,
            peak_open: self.peak_open + other.peak_open,
            peak_live: self.peak_live + other.peak_live,
            pool_reuse: self.pool_reuse + other.pool_reuse,
            pathstore_entries: self.pathstore_entries + other.pathstore_entries,
        }
    }
}

/// Step-by-step record of a run, in `(c1, c2)` terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    Pop {
        state: StateId,
        g: CostPair,
        f: CostPair,
    },
    /// Primary f-value reached the partner's bound.
    Terminate {
        state: StateId,
    },
    PrunedAtPop {
        state: StateId,
    },
    Tuned {
        state: StateId,
        value: Cost,
    },
    BoundUpdate {
        from: Cost,
        to: Cost,
    },
    Solution {
        state: StateId,
        cost: CostPair,
    },
    Replaced {
        cost: CostPair,
    },
    TerminalSkip {
        state: StateId,
    },
    Generated {
        state: StateId,
        g: CostPair,
        f: CostPair,
    },
    PrunedAtGeneration {
        state: StateId,
        g: CostPair,
        f: CostPair,
    },
}

pub struct Engine<'a> {
    config: EngineConfig,
    view: GraphView<'a>,
    origin: StateId,
    target: StateId,
    h_primary: &'a [Cost],
    primary_tree: &'a ShortestPathTree,
    secondary_tree: &'a ShortestPathTree,
    primary_ceiling: Cost,
    links: EngineLinks<'a>,
    frontier: Frontier<u32>,
    pool: NodePool<'a, SearchNode>,
    store: PathStore,
    gmin: Vec<Cost>,
    solutions: SolutionList,
    metrics: SearchMetrics,
    trace: Vec<TraceEvent>,
    started: bool,
    done: bool,
}

impl<'a> Engine<'a> {
    pub fn new(
        graph: &'a BiGraph,
        heuristics: &'a HeuristicSet,
        config: EngineConfig,
        links: EngineLinks<'a>,
    ) -> Engine<'a> {
        let (view, origin, target) = match config.direction {
            Direction::Forward => (graph.forward(), heuristics.start(), heuristics.goal()),
            Direction::Backward => (graph.reversed(), heuristics.goal(), heuristics.start()),
        };
        let side = config.direction.target_side();
        let primary_tree = heuristics.tree(side, config.order);
        let secondary_tree = heuristics.tree(side, config.order.flipped());
        let lower = primary_tree.primary(origin);
        // No non-dominated path has a primary cost above the primary cost of
        // the secondary-optimal path.
        let primary_ceiling = secondary_tree.secondary(origin);
        let frontier = if lower == INF {
            Frontier::new(config.queue, 0, 0)
        } else {
            Frontier::new(config.queue, lower, primary_ceiling.max(lower))
        };
        let recycle = config.backtrack == Backtrack::Compact;
        Engine {
            config,
            view,
            origin,
            target,
            h_primary: primary_tree.primary_values(),
            primary_tree,
            secondary_tree,
            primary_ceiling,
            links,
            frontier,
            pool: NodePool::new(recycle, links.gauge),
            store: PathStore::new(graph.num_states()),
            gmin: vec![INF; graph.num_states()],
            solutions: SolutionList::new(),
            metrics: SearchMetrics::default(),
            trace: Vec::new(),
            started: false,
            done: false,
        }
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn is_done(&self) -> bool {
        self.done
    }

    /// Processes one pop. Returns `false` once the search has finished.
    pub fn step(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            self.push_origin();
        }
        let Some(slot) = self.frontier.pop() else {
            self.finish();
            return false;
        };
        let node = *self.pool.get(slot);
        self.pool.release(slot);
        if !self.process(node, slot) {
            self.finish();
            return false;
        }
        true
    }

    pub fn run(&mut self) {
        while self.step() {}
    }

    pub fn solutions(&self) -> &SolutionList {
        &self.solutions
    }

    pub fn metrics(&self) -> SearchMetrics {
        let mut m = self.metrics;
        m.peak_live = self.pool.peak_live();
        m.pool_reuse = self.pool.reused();
        m.pathstore_entries = self.store.len();
        m
    }

    pub fn trace(&self) -> &[TraceEvent] {
        &self.trace
    }

    pub fn path_store(&self) -> &PathStore {
        &self.store
    }

    /// Per-state watermark of the last expanded secondary cost.
    pub fn gmin(&self, s: StateId) -> Cost {
        self.gmin[s as usize]
    }

    pub fn solution_cost(&self, solution: &Solution) -> CostPair {
        self.config.order.unproject(solution.key)
    }

    /// Solutions in `(c1, c2)` terms, in discovery order.
    pub fn solution_costs(&self) -> Vec<CostPair> {
        self.solutions.iter().map(|s| self.solution_cost(s)).collect()
    }

    /// Arcs of a solution path in start-to-goal order.
    pub fn solution_arcs(&self, solution: &Solution) -> Result<Vec<ArcId>> {
        let mut arcs = match solution.source {
            SolutionSource::Node { state, link } => {
                let mut arcs = match self.config.backtrack {
                    Backtrack::Compact => self.store.reconstruct_arcs(self.view, state, link)?,
                    Backtrack::Conventional => self.walk_slots(link)?,
                };
                if state != self.target {
                    arcs.extend(tree_arcs(self.view.graph(), self.primary_tree, state)?);
                }
                arcs
            }
            SolutionSource::SecondaryTree => tree_arcs(self.view.graph(), self.secondary_tree, self.origin)?,
        };
        if self.config.direction == Direction::Backward {
            arcs.reverse();
        }
        Ok(arcs)
    }

    /// Start-to-goal state sequence of a solution.
    pub fn solution_path(&self, solution: &Solution) -> Result<Vec<StateId>> {
        let arcs = self.solution_arcs(solution)?;
        let graph = self.view.graph();
        let mut states = Vec::with_capacity(arcs.len() + 1);
        let first = match self.config.direction {
            Direction::Forward => self.origin,
            Direction::Backward => self.target,
        };
        states.push(arcs.first().map_or(first, |&a| graph.arc(a).from));
        states.extend(arcs.iter().map(|&a| graph.arc(a).to));
        Ok(states)
    }

    /// The engine's solutions as a front (sorted by `c1`, paths optional).
    pub fn front(&self, with_paths: bool) -> Result<ParetoFront> {
        let mut entries = self
            .solutions
            .iter()
            .map(|s| {
                Ok(FrontEntry {
                    cost: self.solution_cost(s),
                    path: if with_paths { Some(self.solution_path(s)?) } else { None },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        entries.sort_by_key(|e| e.cost);
        Ok(ParetoFront { entries })
    }

    fn walk_slots(&self, slot: u32) -> Result<Vec<ArcId>> {
        let mut arcs = Vec::new();
        let mut node = *self.pool.get(slot);
        while node.parent_arc != NO_ARC {
            arcs.push(node.parent_arc);
            if arcs.len() > self.pool.capacity_used() {
                return Err(Error::Reconstruction("cyclic node parents".into()));
            }
            node = *self.pool.get(node.parent_link);
        }
        arcs.reverse();
        Ok(arcs)
    }

    #[inline]
    fn secondary_h(&self, s: StateId) -> Cost {
        self.links.secondary_h[s as usize].load(Ordering::Relaxed)
    }

    #[inline]
    fn partner_bound(&self) -> Cost {
        self.links.partner_bound.load(Ordering::Relaxed)
    }

    #[inline]
    fn own_bound(&self) -> Cost {
        self.gmin[self.target as usize]
    }

    fn set_own_bound(&mut self, value: Cost) {
        let from = self.own_bound();
        self.gmin[self.target as usize] = value;
        self.links.own_bound.fetch_min(value, Ordering::Relaxed);
        if self.config.trace {
            self.trace.push(TraceEvent::BoundUpdate { from, to: value });
        }
    }

    fn unproject(&self, lex: Lex) -> CostPair {
        self.config.order.unproject(lex)
    }

    fn push_origin(&mut self) {
        let s = self.origin;
        let hp = self.h_primary[s as usize];
        if hp == INF {
            return;
        }
        let node = SearchNode {
            state: s,
            g: Lex::new(0, 0),
            f: Lex::new(hp, self.secondary_h(s)),
            parent_arc: NO_ARC,
            parent_link: 0,
        };
        self.enqueue(node);
    }

    fn enqueue(&mut self, node: SearchNode) {
        let slot = self.pool.alloc(node);
        self.frontier.push(node.f, slot).expect("consistent primary heuristic keeps keys in the bucket range");
        self.metrics.generated += 1;
        self.metrics.peak_open = self.metrics.peak_open.max(self.frontier.len());
        if self.config.trace {
            let (g, f) = (self.unproject(node.g), self.unproject(node.f));
            self.trace.push(TraceEvent::Generated { state: node.state, g, f });
        }
    }

    fn add_solution(&mut self, key: Lex, source: SolutionSource, state: StateId) {
        if let Some(old) = last_solution_check(&mut self.solutions, key.primary) {
            if self.config.trace {
                let cost = self.solution_cost(&old);
                self.trace.push(TraceEvent::Replaced { cost });
            }
        }
        self.solutions.push(Solution { key, source });
        if self.config.trace {
            let cost = self.unproject(key);
            self.trace.push(TraceEvent::Solution { state, cost });
        }
    }

    /// Handles one popped node; `false` means terminate.
    fn process(&mut self, x: SearchNode, slot: u32) -> bool {
        let s = x.state;
        let enhanced = self.config.enhanced;
        if self.config.trace {
            let (g, f) = (self.unproject(x.g), self.unproject(x.f));
            self.trace.push(TraceEvent::Pop { state: s, g, f });
        }

        if enhanced && x.f.primary >= self.partner_bound() {
            if self.config.trace {
                self.trace.push(TraceEvent::Terminate { state: s });
            }
            return false;
        }

        if x.g.secondary >= self.gmin[s as usize] || x.f.secondary >= self.own_bound() {
            self.metrics.pruned_at_pop += 1;
            if self.config.trace {
                self.trace.push(TraceEvent::PrunedAtPop { state: s });
            }
            return true;
        }

        if enhanced && self.gmin[s as usize] == INF {
            if let Some(sink) = self.links.tuning_sink {
                sink[s as usize].fetch_max(x.g.primary, Ordering::Relaxed);
                self.metrics.tuning_writes += 1;
                if self.config.trace {
                    self.trace.push(TraceEvent::Tuned { state: s, value: x.g.primary });
                }
            }
        }

        if s == self.target {
            self.set_own_bound(x.g.secondary);
        } else {
            self.gmin[s as usize] = x.g.secondary;
        }
        self.metrics.expanded += 1;

        let link = match self.config.backtrack {
            Backtrack::Compact => {
                let parent = (x.parent_arc != NO_ARC).then(|| ParentLink {
                    arc: x.parent_arc,
                    state: self.view.source(x.parent_arc),
                    path: x.parent_link,
                });
                self.store.record(s, parent).expect("parent entry recorded before its children")
            }
            Backtrack::Conventional => slot,
        };

        if s == self.target {
            self.add_solution(x.g, SolutionSource::Node { state: s, link }, s);
            return true;
        }

        if enhanced {
            let joined = add_cost(x.g.secondary, self.primary_tree.secondary(s));
            if joined < self.own_bound() {
                self.set_own_bound(joined);
                self.metrics.early_solutions += 1;
                self.add_solution(Lex::new(x.f.primary, joined), SolutionSource::Node { state: s, link }, s);
                if self.h_primary[s as usize] == self.secondary_tree.secondary(s) {
                    self.metrics.terminal_skips += 1;
                    if self.config.trace {
                        self.trace.push(TraceEvent::TerminalSkip { state: s });
                    }
                    return true;
                }
            }
        }

        self.expand(x, link);
        true
    }

    fn expand(&mut self, x: SearchNode, link: u32) {
        self.metrics.successor_scans += 1;
        let order = self.config.order;
        for (arc, t, cost) in self.view.successors(x.state) {
            let hp = self.h_primary[t as usize];
            let g = x.g + order.project(cost);
            let f = Lex::new(add_cost(g.primary, hp), add_cost(g.secondary, self.secondary_h(t)));
            let prune = hp == INF
                || g.secondary >= self.gmin[t as usize]
                || f.secondary >= self.own_bound()
                || (self.config.enhanced && f.primary >= self.partner_bound())
                || f.primary > self.primary_ceiling;
            if prune {
                self.metrics.pruned_at_generation += 1;
                if self.config.trace {
                    let (g, f) = (self.unproject(g), self.unproject(f));
                    self.trace.push(TraceEvent::PrunedAtGeneration { state: t, g, f });
                }
                continue;
            }
            self.enqueue(SearchNode { state: t, g, f, parent_arc: arc, parent_link: link });
        }
    }

    fn finish(&mut self) {
        if self.done {
            return;
        }
        self.done = true;
        if self.config.enhanced && self.config.seed_partner_bound {
            let key = Lex::new(self.primary_ceiling, self.secondary_tree.primary(self.origin));
            let dominated = self.solutions.last().is_some_and(|l| l.key.secondary <= key.secondary);
            if !dominated {
                self.add_solution(key, SolutionSource::SecondaryTree, self.origin);
            }
        }
    }
}

fn tree_arcs(graph: &BiGraph, tree: &ShortestPathTree, from: StateId) -> Result<Vec<ArcId>> {
    tree.walk_arcs(graph, from)
        .ok_or_else(|| Error::Reconstruction(format!("complement tree does not reach state {from}")))
}

/// Result of a stand-alone uni-directional run.
#[derive(Clone, Debug)]
pub struct SearchRun {
    pub front: ParetoFront,
    pub metrics: SearchMetrics,
    pub trace: Vec<TraceEvent>,
    pub path_store: PathStore,
    /// Values published to the (disconnected) tuning sink.
    pub tuned: Vec<Cost>,
    /// Peak live records as seen by the run's gauge.
    pub peak_live: usize,
}

/// Runs one engine in isolation. The partner bound starts unbounded unless
/// `config.seed_partner_bound` is set.
pub fn run_unidirectional(
    graph: &BiGraph,
    heuristics: &HeuristicSet,
    config: EngineConfig,
    with_paths: bool,
) -> Result<SearchRun> {
    let side = config.direction.target_side();
    let secondary_tree = heuristics.tree(side, config.order.flipped());
    let sink_tree = heuristics.tree(config.direction.origin_side(), config.order);
    let origin = match config.direction {
        Direction::Forward => heuristics.start(),
        Direction::Backward => heuristics.goal(),
    };
    let own = AtomicU64::new(INF);
    let partner_init =
        if config.enhanced && config.seed_partner_bound { secondary_tree.secondary(origin) } else { INF };
    let partner = AtomicU64::new(partner_init);
    let secondary_h = atomic_costs(secondary_tree.primary_values());
    let sink = atomic_costs(sink_tree.primary_values());
    let gauge = LiveGauge::new();
    let links = EngineLinks {
        own_bound: &own,
        partner_bound: &partner,
        secondary_h: &secondary_h,
        tuning_sink: Some(&sink),
        gauge: Some(&gauge),
    };
    let mut engine = Engine::new(graph, heuristics, config, links);
    engine.run();
    Ok(SearchRun {
        front: engine.front(with_paths)?,
        metrics: engine.metrics(),
        trace: engine.trace.clone(),
        path_store: engine.store.clone(),
        tuned: sink.iter().map(|c| c.load(Ordering::Relaxed)).collect(),
        peak_live: gauge.peak(),
    })
}

/// Baseline BOA*.
pub fn boa_star(
    graph: &BiGraph,
    heuristics: &HeuristicSet,
    direction: Direction,
    order: ObjectiveOrder,
    queue: QueueMode,
) -> Result<SearchRun> {
    let config = EngineConfig { direction, order, queue, enhanced: false, ..Default::default() };
    run_unidirectional(graph, heuristics, config, true)
}

/// Enhanced BOA* run on its own.
pub fn boa_enhanced(
    graph: &BiGraph,
    heuristics: &HeuristicSet,
    direction: Direction,
    order: ObjectiveOrder,
    queue: QueueMode,
) -> Result<SearchRun> {
    let config = EngineConfig { direction, order, queue, enhanced: true, ..Default::default() };
    run_unidirectional(graph, heuristics, config, true)
}
