//! Small graphs and seeded random instances shared by tests and the
//! acceptance suite.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::CostPair;
use crate::graph::{BiGraph, StateId};

pub const SS: StateId = 0;
pub const S1: StateId = 1;
pub const S2: StateId = 2;
pub const S3: StateId = 3;
pub const SG: StateId = 4;

/// Arc list of the five-state worked example: `s_s, s_1, s_2, s_3, s_g`
/// are ids 0..=4.
pub const EXAMPLE_ARCS: [(StateId, StateId, u64, u64); 7] =
    [(SS, S1, 1, 3), (S1, S2, 1, 2), (SS, S2, 3, 4), (SS, S3, 3, 1), (S3, S2, 2, 1), (S2, SG, 2, 1), (S3, SG, 3, 4)];

pub fn example_graph() -> BiGraph {
    example_without(&[])
}

/// The worked example minus the arcs listed as `(from, to)`.
pub fn example_without(removed: &[(StateId, StateId)]) -> BiGraph {
    let arcs = EXAMPLE_ARCS
        .iter()
        .filter(|(u, v, _, _)| !removed.contains(&(*u, *v)))
        .map(|&(u, v, c1, c2)| (u, v, CostPair::new(c1, c2)));
    BiGraph::from_arcs(5, arcs).expect("static fixture")
}

pub fn single_arc() -> BiGraph {
    BiGraph::from_arcs(2, [(0, 1, CostPair::new(4, 3))]).expect("static fixture")
}

/// A random instance: graph plus a distinct endpoint pair.
#[derive(Clone, Debug)]
pub struct Instance {
    pub seed: u64,
    pub graph: BiGraph,
    pub start: StateId,
    pub goal: StateId,
}

/// Seeded random digraph with `2 <= n <= max_states`, at most `max_arcs`
/// arcs and integer weights in `0..=max_weight`.
pub fn random_instance(seed: u64, max_states: usize, max_arcs: usize, max_weight: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2..=max_states.max(2));
    let m = rng.random_range(0..=max_arcs);
    let arcs: Vec<_> = (0..m)
        .map(|_| {
            let u = rng.random_range(0..n) as StateId;
            let v = rng.random_range(0..n) as StateId;
            let c = CostPair::new(rng.random_range(0..=max_weight), rng.random_range(0..=max_weight));
            (u, v, c)
        })
        .collect();
    let start = rng.random_range(0..n) as StateId;
    let mut goal = rng.random_range(0..n) as StateId;
    while goal == start {
        goal = rng.random_range(0..n) as StateId;
    }
    let graph = BiGraph::from_arcs(n, arcs).expect("ids drawn in range");
    Instance { seed, graph, start, goal }
}

/// The standard test corpus: `count` instances with n <= 50, m <= 200 and
/// weights 0..=10.
pub fn corpus(count: usize) -> Vec<Instance> {
    (0..count as u64).map(|i| random_instance(0xB0BA_0000 + i, 50, 200, 10)).collect()
}
