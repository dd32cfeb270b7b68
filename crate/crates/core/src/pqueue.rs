//! Open-list implementations.
//!
//! [`BucketQueue`] is a fixed-range array of unordered buckets keyed on the
//! primary f-value only; [`HeapQueue`] is a binary heap ordered
//! lexicographically on `(primary, secondary)`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::cost::{Cost, Lex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum QueueMode {
    #[default]
    Bucket,
    Heap,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QueueError {
    #[error("primary key {key} outside bucket range [{lower}, {upper}]")]
    OutOfRange { key: Cost, lower: Cost, upper: Cost },
    #[error("primary key {key} below the current minimum bucket {cursor}")]
    NonMonotone { key: Cost, cursor: Cost },
}

/// Fixed-size bucket list without tie-breaking.
#[derive(Clone, Debug)]
pub struct BucketQueue<T> {
    lower: Cost,
    buckets: Vec<Vec<T>>,
    cursor: usize,
    len: usize,
}

impl<T> BucketQueue<T> {
    /// Accepts primary keys in `[lower, upper]`.
    pub fn new(lower: Cost, upper: Cost) -> Self {
        assert!(lower <= upper, "empty bucket range [{lower}, {upper}]");
        let width = usize::try_from(upper - lower + 1).expect("bucket range fits in memory");
        let mut buckets = Vec::with_capacity(width);
        buckets.resize_with(width, Vec::new);
        BucketQueue { lower, buckets, cursor: 0, len: 0 }
    }

    pub fn lower(&self) -> Cost {
        self.lower
    }

    pub fn upper(&self) -> Cost {
        self.lower + self.buckets.len() as Cost - 1
    }

    pub fn push(&mut self, key: Lex, item: T) -> Result<(), QueueError> {
        let upper = self.upper();
        if key.primary < self.lower || key.primary > upper {
            return Err(QueueError::OutOfRange { key: key.primary, lower: self.lower, upper });
        }
        let idx = (key.primary - self.lower) as usize;
        if idx < self.cursor {
            return Err(QueueError::NonMonotone { key: key.primary, cursor: self.lower + self.cursor as Cost });
        }
        self.buckets[idx].push(item);
        self.len += 1;
        Ok(())
    }

    pub fn pop(&mut self) -> Option<T> {
        if self.len == 0 {
            return None;
        }
        while self.buckets[self.cursor].is_empty() {
            self.cursor += 1;
        }
        self.len -= 1;
        self.buckets[self.cursor].pop()
    }

    /// Primary key of the current minimum bucket.
    pub fn cursor_key(&self) -> Cost {
        self.lower + self.cursor as Cost
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

#[derive(Clone, Debug)]
struct HeapEntry<T> {
    key: Lex,
    seq: u64,
    item: T,
}

impl<T> PartialEq for HeapEntry<T> {
    fn eq(&self, other: &Self) -> bool {
        (self.key, self.seq) == (other.key, other.seq)
    }
}

impl<T> Eq for HeapEntry<T> {}

impl<T> PartialOrd for HeapEntry<T> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<T> Ord for HeapEntry<T> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.key, self.seq).cmp(&(other.key, other.seq))
    }
}

/// Binary min-heap on lexicographic `(primary, secondary)` keys.
///
/// Equal keys pop in insertion order, which keeps runs reproducible; callers
/// must not rely on it.
#[derive(Clone, Debug)]
pub struct HeapQueue<T> {
    heap: BinaryHeap<Reverse<HeapEntry<T>>>,
    seq: u64,
}

impl<T> Default for HeapQueue<T> {
    fn default() -> Self {
        HeapQueue { heap: BinaryHeap::new(), seq: 0 }
    }
}

impl<T> HeapQueue<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: Lex, item: T) {
        self.seq += 1;
        self.heap.push(Reverse(HeapEntry { key, seq: self.seq, item }));
    }

    pub fn pop(&mut self) -> Option<T> {
        self.heap.pop().map(|Reverse(e)| e.item)
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }
}

/// Either frontier, selected at run time.
#[derive(Clone, Debug)]
pub enum Frontier<T> {
    Bucket(BucketQueue<T>),
    Heap(HeapQueue<T>),
}

impl<T> Frontier<T> {
    /// `lower..=upper` bounds the primary keys; only the bucket mode uses it.
    pub fn new(mode: QueueMode, lower: Cost, upper: Cost) -> Self {
        match mode {
            QueueMode::Bucket => Frontier::Bucket(BucketQueue::new(lower, upper)),
            QueueMode::Heap => Frontier::Heap(HeapQueue::new()),
        }
    }

    pub fn push(&mut self, key: Lex, item: T) -> Result<(), QueueError> {
        match self {
            Frontier::Bucket(q) => q.push(key, item),
            Frontier::Heap(q) => {
                q.push(key, item);
                Ok(())
            }
        }
    }

    pub fn pop(&mut self) -> Option<T> {
        match self {
            Frontier::Bucket(q) => q.pop(),
            Frontier::Heap(q) => q.pop(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Frontier::Bucket(q) => q.len(),
            Frontier::Heap(q) => q.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
