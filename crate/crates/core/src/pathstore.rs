//! Compact backtracking.
//!
//! Each accepted node leaves behind one `(incoming arc, parent path id)`
//! entry at its state, so the heavy node record itself can be recycled right
//! after it is popped. Path ids are 1-based per state; entry `k` of a state
//! belongs to the `k`-th node accepted there.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::graph::{ArcId, GraphView, StateId, NO_ARC};
use crate::heuristics::ShortestPathTree;

/// 1-based index into a state's entries. `0` is never a valid id.
pub type PathId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathEntry {
    /// Arc into the state in the search's view, or [`NO_ARC`] at the origin.
    pub parent_arc: ArcId,
    /// Path id of the predecessor entry at the arc's source state.
    pub parent_path: PathId,
}

impl PathEntry {
    pub fn is_origin(&self) -> bool {
        self.parent_arc == NO_ARC
    }
}

/// Link from a new entry to the entry it extends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParentLink {
    pub arc: ArcId,
    pub state: StateId,
    pub path: PathId,
}

#[derive(Clone, Debug, Default)]
pub struct PathStore {
    entries: Vec<Vec<PathEntry>>,
    total: usize,
}

impl PathStore {
    pub fn new(num_states: usize) -> Self {
        PathStore { entries: vec![Vec::new(); num_states], total: 0 }
    }

    /// Appends an entry for `state` and returns its path id.
    pub fn record(&mut self, state: StateId, parent: Option<ParentLink>) -> Result<PathId> {
        let entry = match parent {
            None => PathEntry { parent_arc: NO_ARC, parent_path: 0 },
            Some(link) => {
                let known = self.entries.get(link.state as usize).map_or(0, Vec::len);
                if link.path == 0 || link.path as usize > known {
                    return Err(Error::Reconstruction(format!("state {} has no path id {}", link.state, link.path)));
                }
                PathEntry { parent_arc: link.arc, parent_path: link.path }
            }
        };
        let list = self
            .entries
            .get_mut(state as usize)
            .ok_or_else(|| Error::Reconstruction(format!("state {state} out of range")))?;
        list.push(entry);
        self.total += 1;
        Ok(list.len() as PathId)
    }

    pub fn entries(&self, state: StateId) -> &[PathEntry] {
        &self.entries[state as usize]
    }

    pub fn entry(&self, state: StateId, path: PathId) -> Option<PathEntry> {
        let idx = (path as usize).checked_sub(1)?;
        self.entries.get(state as usize)?.get(idx).copied()
    }

    /// Total number of entries over all states.
    pub fn len(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Arcs from the origin to `state`, in search order.
    pub fn reconstruct_arcs(&self, view: GraphView<'_>, state: StateId, path: PathId) -> Result<Vec<ArcId>> {
        let mut arcs = Vec::new();
        let (mut s, mut p) = (state, path);
        loop {
            let entry = self.entry(s, p).ok_or_else(|| Error::Reconstruction(format!("no entry {p} at state {s}")))?;
            if entry.is_origin() {
                break;
            }
            arcs.push(entry.parent_arc);
            if arcs.len() > self.total {
                return Err(Error::Reconstruction("cyclic parent links".into()));
            }
            s = view.source(entry.parent_arc);
            p = entry.parent_path;
        }
        arcs.reverse();
        Ok(arcs)
    }

    /// State sequence from the origin to `state`, extended by the walk of
    /// `complement` from `state` to `target` when `state != target`.
    pub fn reconstruct(
        &self,
        view: GraphView<'_>,
        target: StateId,
        state: StateId,
        path: PathId,
        complement: Option<&ShortestPathTree>,
    ) -> Result<Vec<StateId>> {
        let arcs = self.reconstruct_arcs(view, state, path)?;
        let origin = arcs.first().map_or(state, |&a| view.source(a));
        let mut states = vec![origin];
        states.extend(arcs.iter().map(|&a| view.target(a)));
        if state != target {
            let tree = complement.ok_or_else(|| {
                Error::Reconstruction(format!("state {state} is not the target and no complement was given"))
            })?;
            let tail = tree
                .walk(view.graph(), state)
                .ok_or_else(|| Error::Reconstruction(format!("complement tree does not reach state {state}")))?;
            if tail.last() != Some(&target) {
                return Err(Error::Reconstruction("complement tree is rooted elsewhere".into()));
            }
            states.extend_from_slice(&tail[1..]);
        }
        Ok(states)
    }
}

/// Live-record counter shared by every pool of one run.
#[derive(Debug, Default)]
pub struct LiveGauge {
    live: AtomicUsize,
    peak: AtomicUsize,
}

impl LiveGauge {
    pub fn new() -> Self {
        Self::default()
    }

    fn inc(&self) {
        let now = self.live.fetch_add(1, Ordering::Relaxed) + 1;
        self.peak.fetch_max(now, Ordering::Relaxed);
    }

    fn dec(&self) {
        self.live.fetch_sub(1, Ordering::Relaxed);
    }

    pub fn live(&self) -> usize {
        self.live.load(Ordering::Relaxed)
    }

    pub fn peak(&self) -> usize {
        self.peak.load(Ordering::Relaxed)
    }
}

/// Slab of node records with an optional free list.
#[derive(Debug)]
pub struct NodePool<'a, T> {
    slots: Vec<T>,
    free: Vec<u32>,
    recycle: bool,
    live: usize,
    peak_live: usize,
    reused: u64,
    gauge: Option<&'a LiveGauge>,
}

impl<'a, T: Copy> NodePool<'a, T> {
    /// With `recycle == false` released records stay allocated, which is
    /// what conventional parent-pointer backtracking needs.
    pub fn new(recycle: bool, gauge: Option<&'a LiveGauge>) -> Self {
        NodePool { slots: Vec::new(), free: Vec::new(), recycle, live: 0, peak_live: 0, reused: 0, gauge }
    }

    pub fn alloc(&mut self, value: T) -> u32 {
        let slot = match self.free.pop() {
            Some(slot) => {
                self.slots[slot as usize] = value;
                self.reused += 1;
                slot
            }
            None => {
                self.slots.push(value);
                (self.slots.len() - 1) as u32
            }
        };
        self.live += 1;
        self.peak_live = self.peak_live.max(self.live);
        if let Some(g) = self.gauge {
            g.inc();
        }
        slot
    }

    #[inline]
    pub fn get(&self, slot: u32) -> &T {
        &self.slots[slot as usize]
    }

    pub fn release(&mut self, slot: u32) {
        if !self.recycle {
            return;
        }
        self.free.push(slot);
        self.live -= 1;
        if let Some(g) = self.gauge {
            g.dec();
        }
    }

    pub fn live(&self) -> usize {
        self.live
    }

    pub fn peak_live(&self) -> usize {
        self.peak_live
    }

    /// Allocations served from the free list.
    pub fn reused(&self) -> u64 {
        self.reused
    }

    /// Slots ever created.
    pub fn capacity_used(&self) -> usize {
        self.slots.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::ObjectiveOrder;
    use crate::fixtures::{example_graph, S1, S2, S3, SG, SS};
    use crate::heuristics::{bounded_lex_astar, LexSearchOptions};

    fn arc_id(view: GraphView<'_>, from: StateId, to: StateId) -> ArcId {
        view.successors(from).find(|&(_, t, _)| t == to).unwrap().0
    }

    #[test]
    fn origin_gets_path_id_one() {
        let mut store = PathStore::new(3);
        assert_eq!(store.record(0, None).unwrap(), 1);
        assert!(store.entries(0)[0].is_origin());
    }

    #[test]
    fn counter_per_state() {
        let g = example_graph();
        let v = g.forward();
        let mut store = PathStore::new(5);
        store.record(SS, None).unwrap();
        let a = ParentLink { arc: arc_id(v, SS, S2), state: SS, path: 1 };
        assert_eq!(store.record(S2, Some(a)).unwrap(), 1);
        assert_eq!(store.record(S2, Some(a)).unwrap(), 2);
        assert_eq!(store.len(), 3);
    }

    #[test]
    fn dangling_parent_is_rejected() {
        let mut store = PathStore::new(5);
        store.record(SS, None).unwrap();
        let bad = ParentLink { arc: 0, state: SS, path: 2 };
        assert!(store.record(S1, Some(bad)).is_err());
        let bad = ParentLink { arc: 0, state: S3, path: 1 };
        assert!(store.record(S1, Some(bad)).is_err());
    }

    #[test]
    fn reconstructs_with_and_without_suffix() {
        let g = example_graph();
        let v = g.forward();
        let tree =
            bounded_lex_astar(g.reversed(), SG, ObjectiveOrder::FirstSecond, &LexSearchOptions::default()).unwrap();
        let mut store = PathStore::new(5);
        store.record(SS, None).unwrap();
        store.record(S2, Some(ParentLink { arc: arc_id(v, SS, S2), state: SS, path: 1 })).unwrap();
        store.record(S3, Some(ParentLink { arc: arc_id(v, SS, S3), state: SS, path: 1 })).unwrap();
        let p = store.record(S2, Some(ParentLink { arc: arc_id(v, S3, S2), state: S3, path: 1 })).unwrap();
        assert_eq!(p, 2);

        let path = store.reconstruct(v, SG, S2, 2, Some(&tree)).unwrap();
        assert_eq!(path, vec![SS, S3, S2, SG]);
        assert_eq!(g.walk_cost(&path), Some(crate::cost::CostPair::new(7, 3)));

        let path = store.reconstruct(v, SG, SS, 1, Some(&tree)).unwrap();
        assert_eq!(path, vec![SS, S1, S2, SG]);
        assert_eq!(g.walk_cost(&path), Some(crate::cost::CostPair::new(4, 6)));

        assert!(store.reconstruct(v, SG, S2, 2, None).is_err());
        assert_eq!(store.reconstruct(v, SS, SS, 1, None).unwrap(), vec![SS]);
    }

    #[test]
    fn pool_recycles_slots() {
        let gauge = LiveGauge::new();
        let mut pool = NodePool::new(true, Some(&gauge));
        let a = pool.alloc(1u32);
        let b = pool.alloc(2u32);
        pool.release(a);
        let c = pool.alloc(3u32);
        assert_eq!(c, a);
        assert_eq!(*pool.get(c), 3);
        assert_eq!(*pool.get(b), 2);
        assert_eq!((pool.live(), pool.peak_live(), pool.reused()), (2, 2, 1));
        assert_eq!((gauge.live(), gauge.peak()), (2, 2));
    }

    #[test]
    fn conventional_pool_retains_records() {
        let mut pool = NodePool::new(false, None);
        let a = pool.alloc(1u32);
        pool.release(a);
        let b = pool.alloc(2u32);
        assert_ne!(a, b);
        assert_eq!(*pool.get(a), 1);
        assert_eq!((pool.live(), pool.reused()), (2, 0));
    }
}
