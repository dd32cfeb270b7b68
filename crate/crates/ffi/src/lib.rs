//! C ABI over the `boba` engines.
//!
//! Graphs and fronts are opaque heap handles released with their `_free`
//! function. Every fallible call returns a [`BobaStatus`]; on failure
//! [`boba_last_error`] describes the most recent error of the calling
//! thread. State ids are 0-based here, unlike the 1-based DIMACS files.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use boba::boba::Threads;
use boba::graph::{build_bigraph, read_dimacs_gr, BiGraph};
use boba::pqueue::QueueMode;
use boba::search::{Backtrack, Direction};
use boba::solve::{solve, Algorithm, RunMetrics, SolveConfig};
use boba::{CostPair, Error, ObjectiveOrder, ParetoFront};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BobaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Io = 3,
    Parse = 4,
    InvalidState = 5,
    OutOfBounds = 6,
    BufferTooSmall = 7,
    Internal = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BobaAlgorithm {
    Oracle = 0,
    Boa = 1,
    BoaEnh = 2,
    Boba = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BobaOrder {
    /// Distance first, time as tie-breaker.
    FirstSecond = 0,
    SecondFirst = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BobaDirection {
    Forward = 0,
    Backward = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BobaQueue {
    Bucket = 0,
    Heap = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BobaBacktrack {
    Compact = 0,
    Conventional = 1,
}

/// One arc of a graph built in memory.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct BobaArc {
    pub from: u32,
    pub to: u32,
    pub c1: u64,
    pub c2: u64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct BobaConfig {
    pub algorithm: BobaAlgorithm,
    /// Uni-directional engines only.
    pub order: BobaOrder,
    /// Uni-directional engines only.
    pub direction: BobaDirection,
    pub queue: BobaQueue,
    /// 1 or 2.
    pub threads: u32,
    /// Mutual heuristic tuning of the bi-directional engine.
    pub tuning: bool,
    pub backtrack: BobaBacktrack,
    /// Reconstruct solution paths.
    pub paths: bool,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct BobaMetrics {
    pub wall_ms: f64,
    pub heuristics_ms: f64,
    pub solutions: u64,
    pub generated: u64,
    pub expanded: u64,
    pub pruned: u64,
    pub peak_open: u64,
    pub peak_live: u64,
    pub pathstore_entries: u64,
    pub pool_reuse: u64,
    pub memory_bytes: u64,
}

/// Opaque graph handle.
pub struct BobaGraph {
    inner: BiGraph,
}

/// Opaque result handle: the Pareto front of one query and its metrics.
pub struct BobaFront {
    front: ParetoFront,
    metrics: RunMetrics,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> BobaStatus {
    match e {
        Error::Io(_) => BobaStatus::Io,
        Error::Parse { .. } | Error::StateRange { .. } | Error::MissingProblemLine | Error::ArcCount { .. } => {
            BobaStatus::Parse
        }
        Error::TopologyMismatch(_) | Error::InvalidArgument(_) => BobaStatus::InvalidArgument,
        Error::InvalidState { .. } => BobaStatus::InvalidState,
        Error::Reconstruction(_) => BobaStatus::Internal,
    }
}

struct Failure(BobaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn fail<T>(status: BobaStatus, message: &str) -> Result<T, Failure> {
    Err(Failure(status, message.to_string()))
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> BobaStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => BobaStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BobaStatus::Internal
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    // SAFETY: the caller passes a pointer obtained from this library or a
    // valid object; null is rejected here.
    unsafe { p.as_ref() }.map_or_else(|| fail(BobaStatus::NullPointer, &format!("{what} is null")), Ok)
}

fn check_out<T>(out: *mut T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        fail(BobaStatus::NullPointer, &format!("{what} is null"))
    } else {
        Ok(())
    }
}

/// Message of the calling thread's last error; empty if none. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn boba_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn boba_status_str(status: BobaStatus) -> *const c_char {
    let s: &'static CStr = match status {
        BobaStatus::Ok => c"ok",
        BobaStatus::NullPointer => c"null pointer",
        BobaStatus::InvalidArgument => c"invalid argument",
        BobaStatus::Io => c"i/o error",
        BobaStatus::Parse => c"parse error",
        BobaStatus::InvalidState => c"invalid state id",
        BobaStatus::OutOfBounds => c"index out of bounds",
        BobaStatus::BufferTooSmall => c"buffer too small",
        BobaStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Builds a graph of `num_states` states from `num_arcs` arcs (0-based ids).
///
/// # Safety
/// `arcs` must point to `num_arcs` readable elements (or be null when
/// `num_arcs` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn boba_graph_from_arcs(
    num_states: usize,
    arcs: *const BobaArc,
    num_arcs: usize,
    out: *mut *mut BobaGraph,
) -> BobaStatus {
    guard(|| {
        check_out(out, "out")?;
        let arcs: &[BobaArc] = if num_arcs == 0 {
            &[]
        } else if arcs.is_null() {
            return fail(BobaStatus::NullPointer, "arcs is null");
        } else {
            // SAFETY: non-null and sized by the caller's contract.
            unsafe { std::slice::from_raw_parts(arcs, num_arcs) }
        };
        let inner = BiGraph::from_arcs(num_states, arcs.iter().map(|a| (a.from, a.to, CostPair::new(a.c1, a.c2))))?;
        // SAFETY: checked non-null above.
        unsafe { *out = Box::into_raw(Box::new(BobaGraph { inner })) };
        Ok(())
    })
}

/// Loads a graph from a DIMACS distance file and a time file with the same
/// arc sequence.
///
/// # Safety
/// `gr1` and `gr2` must be NUL-terminated paths; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn boba_graph_from_dimacs(
    gr1: *const c_char,
    gr2: *const c_char,
    out: *mut *mut BobaGraph,
) -> BobaStatus {
    guard(|| {
        check_out(out, "out")?;
        if gr1.is_null() || gr2.is_null() {
            return fail(BobaStatus::NullPointer, "graph path is null");
        }
        // SAFETY: non-null NUL-terminated strings per the contract.
        let (p1, p2) = unsafe { (CStr::from_ptr(gr1), CStr::from_ptr(gr2)) };
        let (Ok(p1), Ok(p2)) = (p1.to_str(), p2.to_str()) else {
            return fail(BobaStatus::InvalidArgument, "graph path is not UTF-8");
        };
        let inner = build_bigraph(&read_dimacs_gr(p1)?, &read_dimacs_gr(p2)?)?;
        // SAFETY: checked non-null above.
        unsafe { *out = Box::into_raw(Box::new(BobaGraph { inner })) };
        Ok(())
    })
}

/// Number of states; 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn boba_graph_num_states(graph: *const BobaGraph) -> usize {
    // SAFETY: null or live per the contract.
    unsafe { graph.as_ref() }.map_or(0, |g| g.inner.num_states())
}

/// Number of arcs after self-loop removal; 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn boba_graph_num_arcs(graph: *const BobaGraph) -> usize {
    // SAFETY: null or live per the contract.
    unsafe { graph.as_ref() }.map_or(0, |g| g.inner.num_arcs())
}

/// # Safety
/// `graph` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn boba_graph_free(graph: *mut BobaGraph) {
    if !graph.is_null() {
        // SAFETY: created by Box::into_raw in this library.
        drop(unsafe { Box::from_raw(graph) });
    }
}

/// BOBA* on one thread with tuning, bucket queue and compact backtracking.
#[no_mangle]
pub extern "C" fn boba_config_default() -> BobaConfig {
    BobaConfig {
        algorithm: BobaAlgorithm::Boba,
        order: BobaOrder::FirstSecond,
        direction: BobaDirection::Forward,
        queue: BobaQueue::Bucket,
        threads: 1,
        tuning: true,
        backtrack: BobaBacktrack::Compact,
        paths: false,
    }
}

fn to_solve_config(c: &BobaConfig) -> Result<SolveConfig, Failure> {
    let threads = match c.threads {
        1 => Threads::One,
        2 => Threads::Two,
        n => return fail(BobaStatus::InvalidArgument, &format!("threads must be 1 or 2, got {n}")),
    };
    Ok(SolveConfig {
        algorithm: match c.algorithm {
            BobaAlgorithm::Oracle => Algorithm::Oracle,
            BobaAlgorithm::Boa => Algorithm::Boa,
            BobaAlgorithm::BoaEnh => Algorithm::BoaEnh,
            BobaAlgorithm::Boba => Algorithm::Boba,
        },
        order: match c.order {
            BobaOrder::FirstSecond => ObjectiveOrder::FirstSecond,
            BobaOrder::SecondFirst => ObjectiveOrder::SecondFirst,
        },
        direction: match c.direction {
            BobaDirection::Forward => Direction::Forward,
            BobaDirection::Backward => Direction::Backward,
        },
        queue: match c.queue {
            BobaQueue::Bucket => QueueMode::Bucket,
            BobaQueue::Heap => QueueMode::Heap,
        },
        threads,
        tuning: c.tuning,
        backtrack: match c.backtrack {
            BobaBacktrack::Compact => Backtrack::Compact,
            BobaBacktrack::Conventional => Backtrack::Conventional,
        },
        paths: c.paths,
    })
}

/// Computes the Pareto front of `start -> goal` (0-based ids). A null
/// `config` means [`boba_config_default`]. An unreachable goal yields an
/// empty front.
///
/// # Safety
/// `graph` must be a live handle, `config` null or readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn boba_solve(
    graph: *const BobaGraph,
    start: u32,
    goal: u32,
    config: *const BobaConfig,
    out: *mut *mut BobaFront,
) -> BobaStatus {
    guard(|| {
        check_out(out, "out")?;
        // SAFETY: per the contract.
        let graph = unsafe { deref(graph, "graph")? };
        // SAFETY: null or readable per the contract.
        let config = unsafe { config.as_ref() }.copied().unwrap_or_else(|| boba_config_default());
        let outcome = solve(&graph.inner, start, goal, &to_solve_config(&config)?)?;
        let front = BobaFront { front: outcome.front, metrics: outcome.metrics };
        // SAFETY: checked non-null above.
        unsafe { *out = Box::into_raw(Box::new(front)) };
        Ok(())
    })
}

/// Number of solutions; 0 for a null handle.
///
/// # Safety
/// `front` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn boba_front_len(front: *const BobaFront) -> usize {
    // SAFETY: null or live per the contract.
    unsafe { front.as_ref() }.map_or(0, |f| f.front.len())
}

/// Cost pair of solution `index` (solutions are sorted by increasing `c1`).
///
/// # Safety
/// `front` must be a live handle; `c1` and `c2` writable.
#[no_mangle]
pub unsafe extern "C" fn boba_front_cost(
    front: *const BobaFront,
    index: usize,
    c1: *mut u64,
    c2: *mut u64,
) -> BobaStatus {
    guard(|| {
        check_out(c1, "c1")?;
        check_out(c2, "c2")?;
        // SAFETY: per the contract.
        let front = unsafe { deref(front, "front")? };
        let Some(e) = front.front.entries.get(index) else {
            return fail(BobaStatus::OutOfBounds, &format!("solution {index} of {}", front.front.len()));
        };
        // SAFETY: checked non-null above.
        unsafe {
            *c1 = e.cost.c1;
            *c2 = e.cost.c2;
        }
        Ok(())
    })
}

/// Number of states on the path of solution `index`; 0 when paths were not
/// requested.
///
/// # Safety
/// `front` must be a live handle; `len` writable.
#[no_mangle]
pub unsafe extern "C" fn boba_front_path_len(front: *const BobaFront, index: usize, len: *mut usize) -> BobaStatus {
    guard(|| {
        check_out(len, "len")?;
        // SAFETY: per the contract.
        let front = unsafe { deref(front, "front")? };
        let Some(e) = front.front.entries.get(index) else {
            return fail(BobaStatus::OutOfBounds, &format!("solution {index} of {}", front.front.len()));
        };
        // SAFETY: checked non-null above.
        unsafe { *len = e.path.as_ref().map_or(0, Vec::len) };
        Ok(())
    })
}

/// Copies the 0-based state sequence of solution `index` into `buffer`.
///
/// # Safety
/// `front` must be a live handle and `buffer` writable for `capacity`
/// elements.
#[no_mangle]
pub unsafe extern "C" fn boba_front_path_copy(
    front: *const BobaFront,
    index: usize,
    buffer: *mut u32,
    capacity: usize,
) -> BobaStatus {
    guard(|| {
        // SAFETY: per the contract.
        let front = unsafe { deref(front, "front")? };
        let Some(e) = front.front.entries.get(index) else {
            return fail(BobaStatus::OutOfBounds, &format!("solution {index} of {}", front.front.len()));
        };
        let path = e.path.as_deref().unwrap_or(&[]);
        if path.len() > capacity {
            return fail(BobaStatus::BufferTooSmall, &format!("path has {} states", path.len()));
        }
        if !path.is_empty() {
            check_out(buffer, "buffer")?;
            // SAFETY: writable for capacity >= path.len() elements.
            unsafe { ptr::copy_nonoverlapping(path.as_ptr(), buffer, path.len()) };
        }
        Ok(())
    })
}

/// Run metrics of the query that produced `front`.
///
/// # Safety
/// `front` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn boba_front_metrics(front: *const BobaFront, out: *mut BobaMetrics) -> BobaStatus {
    guard(|| {
        check_out(out, "out")?;
        // SAFETY: per the contract.
        let m = unsafe { deref(front, "front")? }.metrics;
        let metrics = BobaMetrics {
            wall_ms: m.wall_ms,
            heuristics_ms: m.heuristics_ms,
            solutions: m.solutions as u64,
            generated: m.generated,
            expanded: m.expanded,
            pruned: m.pruned,
            peak_open: m.peak_open as u64,
            peak_live: m.peak_live as u64,
            pathstore_entries: m.pathstore_entries as u64,
            pool_reuse: m.pool_reuse,
            memory_bytes: m.memory_bytes as u64,
        };
        // SAFETY: checked non-null above.
        unsafe { *out = metrics };
        Ok(())
    })
}

/// # Safety
/// `front` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn boba_front_free(front: *mut BobaFront) {
    if !front.is_null() {
        // SAFETY: created by Box::into_raw in this library.
        drop(unsafe { Box::from_raw(front) });
    }
}
