//! Brute-force bi-objective reference.
//!
//! A plain label-correcting fixpoint with no heuristics and no bounds. It
//! shares no code path with the search engines beyond the graph itself.

use std::collections::VecDeque;

use crate::cost::CostPair;
use crate::front::ParetoFront;
use crate::graph::{BiGraph, StateId};

/// Per-state set of mutually non-dominated labels.
#[derive(Clone, Debug, Default)]
pub struct LabelBag {
    labels: Vec<CostPair>,
}

impl LabelBag {
    /// Inserts `label` unless an existing label weakly dominates it; removes
    /// the labels it dominates. Returns whether it was inserted.
    pub fn insert(&mut self, label: CostPair) -> bool {
        if self.labels.iter().any(|l| l.weakly_dominates(&label)) {
            return false;
        }
        self.labels.retain(|l| !label.weakly_dominates(l));
        self.labels.push(label);
        true
    }

    pub fn contains(&self, label: &CostPair) -> bool {
        self.labels.contains(label)
    }

    pub fn labels(&self) -> &[CostPair] {
        &self.labels
    }
}

/// Exact Pareto front of `start -> goal` costs, sorted by increasing `c1`.
pub fn pareto_oracle(graph: &BiGraph, start: StateId, goal: StateId) -> ParetoFront {
    let mut bags = vec![LabelBag::default(); graph.num_states()];
    let mut work = VecDeque::new();
    bags[start as usize].insert(CostPair::ZERO);
    work.push_back((start, CostPair::ZERO));

    while let Some((u, label)) = work.pop_front() {
        // Skip labels erased since they were queued.
        if !bags[u as usize].contains(&label) {
            continue;
        }
        for arc in graph.out_arcs(u).map(|id| graph.arc(id)) {
            let next = label + arc.cost;
            if bags[arc.to as usize].insert(next) {
                work.push_back((arc.to, next));
            }
        }
    }

    let mut front = bags[goal as usize].labels().to_vec();
    front.sort();
    ParetoFront::from_costs(front)
}
