use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: state id {id} outside [1, {n}]")]
    StateRange { line: usize, id: u64, n: usize },

    #[error("missing `p sp <n> <m>` problem line")]
    MissingProblemLine,

    #[error("declared {declared} arcs but found {found}")]
    ArcCount { declared: usize, found: usize },

    #[error("graph topologies differ: {0}")]
    TopologyMismatch(String),

    #[error("state {state} out of range for a graph with {n} states")]
    InvalidState { state: usize, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("path reconstruction failed: {0}")]
    Reconstruction(String),
}
