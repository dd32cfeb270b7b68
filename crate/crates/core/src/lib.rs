//! Bi-objective point-to-point shortest paths.
//!
//! The crate computes the full set of cost-unique Pareto-optimal
//! `start -> goal` paths of a graph whose arcs carry two non-negative integer
//! costs (typically distance and travel time). Three engines are provided:
//!
//! * [`search::boa_star`]: the baseline bi-objective A* (BOA*);
//! * [`search::boa_enhanced`]: BOA* with early solution updates, terminal
//!   node skipping and bound-based termination;
//! * [`boba::boba`]: two enhanced engines searching from both ends in
//!   opposite objective orders, sharing bounds and tuning each other's
//!   heuristics (BOBA*).
//!
//! All engines sit on the same preliminary bounds ([`heuristics`]), the same
//! frontier implementations ([`pqueue`]) and the compact path store
//! ([`pathstore`]). [`oracle`] is an independent brute-force reference.

pub mod boba;
pub mod cli;
pub mod cost;
pub mod error;
pub mod fixtures;
pub mod front;
pub mod graph;
pub mod heuristics;
pub mod oracle;
pub mod pathstore;
pub mod pqueue;
pub mod search;
pub mod solve;

pub use cost::{Cost, CostPair, ObjectiveOrder, INF};
pub use error::{Error, Result};
pub use front::{FrontEntry, ParetoFront};
pub use graph::{BiGraph, StateId};
