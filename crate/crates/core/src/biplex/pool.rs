use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use super::{is_k_biplex, is_maximal, FoundBiplex, SearchParams};
use crate::graph::BipartiteGraph;

/// The K best maximal k-biplexes seen so far.
///
/// Offers are serialized by a mutex. The K-th edge count is mirrored in an
/// atomic so that searches can read it without locking; such reads may be
/// stale, which only weakens pruning.
#[derive(Debug)]
pub struct ResultPool {
    capacity: usize,
    entries: Mutex<Vec<FoundBiplex>>,
    // 0 while the pool is not full, otherwise K-th edge count + 1
    threshold: AtomicU64,
    duplicates: AtomicU64,
}

impl ResultPool {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity > 0, "pool capacity must be positive");
        ResultPool {
            capacity,
            entries: Mutex::new(Vec::with_capacity(capacity + 1)),
            threshold: AtomicU64::new(0),
            duplicates: AtomicU64::new(0),
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// The K-th best edge count once the pool holds K entries.
    pub fn threshold(&self) -> Option<u64> {
        match self.threshold.load(Ordering::Relaxed) {
            0 => None,
            t => Some(t - 1),
        }
    }

    /// The K-th best edge count, or 0 while fewer than K entries are held.
    pub fn kth_edge_count(&self) -> u64 {
        self.threshold().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.lock().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Offers rejected because the identical vertex set was already held.
    pub fn duplicates(&self) -> u64 {
        self.duplicates.load(Ordering::Relaxed)
    }

    /// Entries in canonical order (edges descending, then vertex sets).
    pub fn entries(&self) -> Vec<FoundBiplex> {
        self.lock().clone()
    }

    pub fn edge_counts(&self) -> Vec<u64> {
        self.lock().iter().map(|h| h.edges).collect()
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, Vec<FoundBiplex>> {
        self.entries.lock().unwrap_or_else(|e| e.into_inner())
    }

    /// Accepts `(left, right)` iff it is a maximal k-biplex of `g` meeting
    /// both thresholds, is not already held, and beats the K-th entry when
    /// the pool is full. Ties at the K-th rank keep the incumbent.
    pub fn offer(
        &self,
        g: &BipartiteGraph,
        mut left: Vec<u32>,
        mut right: Vec<u32>,
        p: &SearchParams,
    ) -> bool {
        if left.len() < p.theta_l || right.len() < p.theta_r {
            return false;
        }
        left.sort_unstable();
        right.sort_unstable();
        if !is_k_biplex(g, &left, &right, p.k) {
            return false;
        }
        let edges = g.induced_edge_count(&left, &right);
        // equal counts still reach the duplicate check below
        if self.threshold().is_some_and(|t| edges < t) {
            return false;
        }
        if !is_maximal(g, &left, &right, p.k).expect("checked k-biplex above") {
            return false;
        }
        let candidate = FoundBiplex { left, right, edges };
        let mut entries = self.lock();
        if entries.iter().any(|h| h.left == candidate.left && h.right == candidate.right) {
            self.duplicates.fetch_add(1, Ordering::Relaxed);
            return false;
        }
        if entries.len() == self.capacity && edges <= entries[entries.len() - 1].edges {
            return false;
        }
        let at = entries
            .binary_search_by(|h| h.canonical_cmp(&candidate))
            .unwrap_or_else(|i| i);
        entries.insert(at, candidate);
        if entries.len() > self.capacity {
            entries.pop();
        }
        if entries.len() == self.capacity {
            let kth = entries[entries.len() - 1].edges;
            self.threshold.store(kth + 1, Ordering::Relaxed);
        }
        true
    }
}
