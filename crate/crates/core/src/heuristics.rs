//! Preliminary single-objective searches.
//!
//! Four lexicographic one-to-all searches produce every lower bound `h`,
//! every complementary-path upper bound `ub` and the shortest-path trees used
//! to splice complementary suffixes onto partial paths. They run in two
//! phases; the second phase is guided by, bounded by and restricted to what
//! the first phase established.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::io::Write;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::cost::{add_cost, Cost, CostPair, Lex, ObjectiveOrder, INF};
use crate::error::{Error, Result};
use crate::graph::{ArcId, BiGraph, GraphView, StateId, NO_ARC};

/// Which end of the query a tree is rooted at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TreeSide {
    /// Paths `s -> goal`, computed on the reversed graph from the goal.
    ToGoal,
    /// Paths `start -> s`, computed on the forward graph from the start.
    FromStart,
}

/// Result of one lexicographic search: per-state optimal `(primary,
/// secondary)` labels and the parent arc leading towards the root.
#[derive(Clone, Debug)]
pub struct ShortestPathTree {
    root: StateId,
    order: ObjectiveOrder,
    reversed: bool,
    primary: Vec<Cost>,
    secondary: Vec<Cost>,
    parent: Vec<ArcId>,
}

impl ShortestPathTree {
    pub fn root(&self) -> StateId {
        self.root
    }

    pub fn order(&self) -> ObjectiveOrder {
        self.order
    }

    /// True when the search ran on the reversed graph (root is a path end).
    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    pub fn reached(&self, s: StateId) -> bool {
        self.primary[s as usize] != INF
    }

    #[inline]
    pub fn primary(&self, s: StateId) -> Cost {
        self.primary[s as usize]
    }

    #[inline]
    pub fn secondary(&self, s: StateId) -> Cost {
        self.secondary[s as usize]
    }

    pub fn primary_values(&self) -> &[Cost] {
        &self.primary
    }

    pub fn label(&self, s: StateId) -> Lex {
        Lex::new(self.primary(s), self.secondary(s))
    }

    /// Label of `s` as a `(c1, c2)` pair.
    pub fn cost(&self, s: StateId) -> CostPair {
        self.order.unproject(self.label(s))
    }

    pub fn parent_arc(&self, s: StateId) -> Option<ArcId> {
        match self.parent[s as usize] {
            NO_ARC => None,
            a => Some(a),
        }
    }

    /// Arcs from `s` to the root following parent arcs. `None` if `s` was
    /// not reached.
    pub fn walk_arcs(&self, graph: &BiGraph, s: StateId) -> Option<Vec<ArcId>> {
        if !self.reached(s) {
            return None;
        }
        let view = if self.reversed { graph.reversed() } else { graph.forward() };
        let mut arcs = Vec::new();
        let mut cur = s;
        while let Some(arc) = self.parent_arc(cur) {
            arcs.push(arc);
            if arcs.len() > graph.num_states() {
                return None;
            }
            cur = view.source(arc);
        }
        (cur == self.root).then_some(arcs)
    }

    /// States from `s` to the root.
    pub fn walk(&self, graph: &BiGraph, s: StateId) -> Option<Vec<StateId>> {
        let view = if self.reversed { graph.reversed() } else { graph.forward() };
        let arcs = self.walk_arcs(graph, s)?;
        let mut states = vec![s];
        states.extend(arcs.iter().map(|&a| view.source(a)));
        Some(states)
    }

    /// Drops every state whose primary cost exceeds `bound`.
    fn restrict_primary(&mut self, bound: Cost) {
        for s in 0..self.primary.len() {
            if self.primary[s] > bound {
                self.primary[s] = INF;
                self.secondary[s] = INF;
                self.parent[s] = NO_ARC;
            }
        }
    }
}

/// Cutoff on the primary f-value of a preliminary search.
#[derive(Clone, Copy, Debug, Default)]
pub enum PrimaryBound<'a> {
    #[default]
    Unbounded,
    Fixed(Cost),
    /// Read at every pop; may be lowered concurrently by another search.
    Shared(&'a AtomicU64),
}

impl PrimaryBound<'_> {
    #[inline]
    fn current(&self) -> Cost {
        match self {
            PrimaryBound::Unbounded => INF,
            PrimaryBound::Fixed(b) => *b,
            PrimaryBound::Shared(cell) => cell.load(Ordering::Relaxed),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct LexSearchOptions<'a> {
    /// Consistent lower bound on the remaining primary cost.
    pub guide: Option<&'a [Cost]>,
    /// Stop at the first pop whose primary f-value exceeds this bound.
    pub bound: PrimaryBound<'a>,
    /// States never to expand.
    pub invalid: Option<&'a [bool]>,
    /// When the given state settles, lower the cell to its secondary cost.
    pub publish: Option<(StateId, &'a AtomicU64)>,
}

/// Cost-bounded lexicographic A* from `root` on `view`.
///
/// Every settled state carries its lexicographically minimal `(primary,
/// secondary)` cost from the root; all other states are left unreached.
pub fn bounded_lex_astar(
    view: GraphView<'_>,
    root: StateId,
    order: ObjectiveOrder,
    options: &LexSearchOptions<'_>,
) -> Result<ShortestPathTree> {
    let n = view.num_states();
    if root as usize >= n {
        return Err(Error::InvalidState { state: root as usize, n });
    }
    let guide = |s: StateId| options.guide.map_or(0, |g| g[s as usize]);
    let excluded = |s: StateId| options.invalid.is_some_and(|m| m[s as usize]) || guide(s) == INF;

    let mut label = vec![Lex::new(INF, INF); n];
    let mut parent = vec![NO_ARC; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();

    if !excluded(root) {
        label[root as usize] = Lex::new(0, 0);
        heap.push(Reverse((guide(root), 0, root)));
    }

    while let Some(Reverse((f_primary, _, s))) = heap.pop() {
        if settled[s as usize] {
            continue;
        }
        if f_primary > options.bound.current() {
            break;
        }
        settled[s as usize] = true;
        let here = label[s as usize];
        if let Some((target, cell)) = options.publish {
            if target == s {
                cell.fetch_min(here.secondary, Ordering::Relaxed);
            }
        }
        for (arc, t, cost) in view.successors(s) {
            if settled[t as usize] || excluded(t) {
                continue;
            }
            let candidate = here + order.project(cost);
            if candidate < label[t as usize] {
                label[t as usize] = candidate;
                parent[t as usize] = arc;
                heap.push(Reverse((add_cost(candidate.primary, guide(t)), candidate.secondary, t)));
            }
        }
    }

    let mut primary = vec![INF; n];
    let mut secondary = vec![INF; n];
    for s in 0..n {
        if settled[s] {
            primary[s] = label[s].primary;
            secondary[s] = label[s].secondary;
        } else {
            parent[s] = NO_ARC;
        }
    }
    Ok(ShortestPathTree { root, order, reversed: view.is_reversed(), primary, secondary, parent })
}

/// All preliminary bounds for one start/goal query.
///
/// Naming follows the forward search: `h1, h2, ub1, ub2` bound `s -> goal`
/// paths; the primed family (`*_from_start`) bounds `start -> s` paths.
#[derive(Clone, Debug)]
pub struct HeuristicSet {
    start: StateId,
    goal: StateId,
    to_goal_12: ShortestPathTree,
    to_goal_21: ShortestPathTree,
    from_start_12: ShortestPathTree,
    from_start_21: ShortestPathTree,
}

impl HeuristicSet {
    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn goal(&self) -> StateId {
        self.goal
    }

    /// The tree on `side` whose primary objective is `order.primary()`.
    pub fn tree(&self, side: TreeSide, order: ObjectiveOrder) -> &ShortestPathTree {
        match (side, order) {
            (TreeSide::ToGoal, ObjectiveOrder::FirstSecond) => &self.to_goal_12,
            (TreeSide::ToGoal, ObjectiveOrder::SecondFirst) => &self.to_goal_21,
            (TreeSide::FromStart, ObjectiveOrder::FirstSecond) => &self.from_start_12,
            (TreeSide::FromStart, ObjectiveOrder::SecondFirst) => &self.from_start_21,
        }
    }

    /// Lower bound `(h1, h2)` on `s -> goal` paths.
    pub fn h(&self, s: StateId) -> CostPair {
        CostPair::new(self.to_goal_12.primary(s), self.to_goal_21.primary(s))
    }

    /// Complementary-path upper bound `(ub1, ub2)` on `s -> goal` paths.
    pub fn ub(&self, s: StateId) -> CostPair {
        CostPair::new(self.to_goal_21.secondary(s), self.to_goal_12.secondary(s))
    }

    /// Lower bound `(h1', h2')` on `start -> s` paths.
    pub fn h_from_start(&self, s: StateId) -> CostPair {
        CostPair::new(self.from_start_12.primary(s), self.from_start_21.primary(s))
    }

    /// Complementary-path upper bound `(ub1', ub2')` on `start -> s` paths.
    pub fn ub_from_start(&self, s: StateId) -> CostPair {
        CostPair::new(self.from_start_21.secondary(s), self.from_start_12.secondary(s))
    }

    /// `(ub1, ub2)` of the two single-objective optimal start-goal paths.
    pub fn global_ub(&self) -> CostPair {
        self.ub(self.start)
    }

    /// `(h1, h2)` at the start: the ideal point of the front.
    pub fn global_lb(&self) -> CostPair {
        self.h(self.start)
    }

    /// Writes `state h1 h2 ub1 ub2` per line, 1-based, `inf` for unreached.
    pub fn write_dump<W: Write>(&self, mut out: W) -> Result<()> {
        let fmt = |c: Cost| if c == INF { "inf".to_string() } else { c.to_string() };
        writeln!(out, "c state h1 h2 ub1 ub2")?;
        for s in 0..self.to_goal_12.primary.len() as StateId {
            let (h, ub) = (self.h(s), self.ub(s));
            writeln!(out, "{} {} {} {} {}", s + 1, fmt(h.c1), fmt(h.c2), fmt(ub.c1), fmt(ub.c2))?;
        }
        Ok(())
    }
}

/// Runs the two preliminary phases. Returns `Ok(None)` when the goal is
/// unreachable from the start.
///
/// With `parallel`, the two searches of each phase run on separate threads;
/// the result is identical either way.
pub fn compute_all_heuristics(
    graph: &BiGraph,
    start: StateId,
    goal: StateId,
    parallel: bool,
) -> Result<Option<HeuristicSet>> {
    graph.check_state(start as usize)?;
    graph.check_state(goal as usize)?;
    if start == goal {
        return Err(Error::InvalidArgument("start and goal coincide".into()));
    }

    // Phase 1: once a search settles the opposite endpoint, the secondary cost
    // of its optimum bounds the other search's primary objective.
    let ub1_cell = AtomicU64::new(INF);
    let ub2_cell = AtomicU64::new(INF);
    let forward_12 = || {
        bounded_lex_astar(
            graph.forward(),
            start,
            ObjectiveOrder::FirstSecond,
            &LexSearchOptions {
                bound: PrimaryBound::Shared(&ub1_cell),
                publish: Some((goal, &ub2_cell)),
                ..Default::default()
            },
        )
    };
    let backward_21 = || {
        bounded_lex_astar(
            graph.reversed(),
            goal,
            ObjectiveOrder::SecondFirst,
            &LexSearchOptions {
                bound: PrimaryBound::Shared(&ub2_cell),
                publish: Some((start, &ub1_cell)),
                ..Default::default()
            },
        )
    };
    let (from_start_12, to_goal_21) = run_pair(parallel, forward_12, backward_21);
    let (mut from_start_12, mut to_goal_21) = (from_start_12?, to_goal_21?);

    if !from_start_12.reached(goal) {
        return Ok(None);
    }
    let global_ub2 = from_start_12.secondary(goal);
    let global_ub1 = to_goal_21.secondary(start);
    debug_assert_eq!(ub2_cell.load(Ordering::Relaxed), global_ub2);

    // Whatever a concurrent cutoff happened to leave behind, keep exactly the
    // states within the final bounds.
    from_start_12.restrict_primary(global_ub1);
    to_goal_21.restrict_primary(global_ub2);

    let invalid: Vec<bool> =
        (0..graph.num_states() as StateId).map(|s| !from_start_12.reached(s) || !to_goal_21.reached(s)).collect();

    let forward_21 = || {
        bounded_lex_astar(
            graph.forward(),
            start,
            ObjectiveOrder::SecondFirst,
            &LexSearchOptions {
                guide: Some(to_goal_21.primary_values()),
                bound: PrimaryBound::Fixed(global_ub2),
                invalid: Some(&invalid),
                publish: None,
            },
        )
    };
    let backward_12 = || {
        bounded_lex_astar(
            graph.reversed(),
            goal,
            ObjectiveOrder::FirstSecond,
            &LexSearchOptions {
                guide: Some(from_start_12.primary_values()),
                bound: PrimaryBound::Fixed(global_ub1),
                invalid: Some(&invalid),
                publish: None,
            },
        )
    };
    let (from_start_21, to_goal_12) = run_pair(parallel, forward_21, backward_12);

    Ok(Some(HeuristicSet {
        start,
        goal,
        to_goal_12: to_goal_12?,
        to_goal_21,
        from_start_12,
        from_start_21: from_start_21?,
    }))
}

fn run_pair<A, B, RA, RB>(parallel: bool, a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    if parallel {
        std::thread::scope(|scope| {
            let handle = scope.spawn(b);
            let ra = a();
            (ra, handle.join().expect("preliminary search panicked"))
        })
    } else {
        let ra = a();
        (ra, b())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example_graph, single_arc, S1, S2, S3, SG, SS};

    fn unbounded(view: GraphView<'_>, root: StateId, order: ObjectiveOrder) -> ShortestPathTree {
        bounded_lex_astar(view, root, order, &LexSearchOptions::default()).unwrap()
    }

    #[test]
    fn example_reverse_first_objective() {
        let g = example_graph();
        let t = unbounded(g.reversed(), SG, ObjectiveOrder::FirstSecond);
        assert_eq!(t.label(S2), Lex::new(2, 1));
        assert_eq!(t.label(S3), Lex::new(3, 4));
        assert_eq!(t.label(S1), Lex::new(3, 3));
        assert_eq!(t.label(SS), Lex::new(4, 6));
        assert_eq!(t.walk(&g, SS).unwrap(), vec![SS, S1, S2, SG]);
    }

    #[test]
    fn example_reverse_second_objective() {
        let g = example_graph();
        let t = unbounded(g.reversed(), SG, ObjectiveOrder::SecondFirst);
        assert_eq!(t.label(SS), Lex::new(3, 7));
        assert_eq!(t.cost(SS), CostPair::new(7, 3));
    }

    #[test]
    fn root_has_zero_label() {
        let g = example_graph();
        let t = unbounded(g.forward(), SS, ObjectiveOrder::FirstSecond);
        assert_eq!(t.label(SS), Lex::new(0, 0));
        assert_eq!(t.parent_arc(SS), None);
        assert_eq!(t.walk(&g, SS).unwrap(), vec![SS]);
    }

    #[test]
    fn rejects_bad_root() {
        let g = example_graph();
        let err = bounded_lex_astar(g.forward(), 9, ObjectiveOrder::FirstSecond, &Default::default());
        assert!(matches!(err, Err(Error::InvalidState { state: 9, n: 5 })));
    }

    #[test]
    fn fixed_bound_stops_early() {
        let g = example_graph();
        let opts = LexSearchOptions { bound: PrimaryBound::Fixed(2), ..Default::default() };
        let t = bounded_lex_astar(g.reversed(), SG, ObjectiveOrder::FirstSecond, &opts).unwrap();
        assert!(t.reached(S2));
        assert!(!t.reached(S3) && !t.reached(S1) && !t.reached(SS));
    }

    #[test]
    fn invalid_states_are_skipped() {
        let g = example_graph();
        let mut mask = vec![false; 5];
        mask[S1 as usize] = true;
        let opts = LexSearchOptions { invalid: Some(&mask), ..Default::default() };
        let t = bounded_lex_astar(g.reversed(), SG, ObjectiveOrder::FirstSecond, &opts).unwrap();
        assert!(!t.reached(S1));
        assert_eq!(t.label(SS), Lex::new(5, 5));
    }

    #[test]
    fn example_heuristic_set() {
        let g = example_graph();
        for parallel in [false, true] {
            let h = compute_all_heuristics(&g, SS, SG, parallel).unwrap().unwrap();
            assert_eq!(h.global_ub(), CostPair::new(7, 6));
            assert_eq!(h.h(SS), CostPair::new(4, 3));
            assert_eq!(h.ub(SS), CostPair::new(7, 6));
            assert_eq!(h.h(S2).c1, 2);
            assert_eq!(h.ub(S2).c1, 2);
            assert_eq!(h.h_from_start(S2).c1, 2);
        }
    }

    #[test]
    fn single_arc_heuristics() {
        let g = single_arc();
        let h = compute_all_heuristics(&g, 0, 1, false).unwrap().unwrap();
        assert_eq!(h.h(0), CostPair::new(4, 3));
        assert_eq!(h.ub(0), CostPair::new(4, 3));
        assert_eq!(h.global_ub(), CostPair::new(4, 3));
    }

    #[test]
    fn unreachable_goal_is_none() {
        let g = example_graph();
        assert!(compute_all_heuristics(&g, SG, SS, false).unwrap().is_none());
    }

    #[test]
    fn dump_format() {
        let g = single_arc();
        let h = compute_all_heuristics(&g, 0, 1, false).unwrap().unwrap();
        let mut out = Vec::new();
        h.write_dump(&mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "c state h1 h2 ub1 ub2\n1 4 3 4 3\n2 0 0 0 0\n");
    }
}
