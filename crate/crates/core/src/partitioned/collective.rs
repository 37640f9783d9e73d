//! In-process collectives for the partitioned engine.

use std::sync::{Barrier, Mutex};

use super::block::MinLocPair;

/// Lexicographic minimum of one candidate per worker.
pub fn allreduce_minloc<I>(candidates: I) -> MinLocPair
where
    I: IntoIterator<Item = MinLocPair>,
{
    candidates
        .into_iter()
        .min()
        .expect("all-reduce needs at least one participant")
}

/// Min-with-index all-reduce shared by `workers` threads.
///
/// Each call is a full barrier: no worker leaves round `r` until every worker
/// has contributed to it. Slots are double-buffered by round parity, so a
/// worker that races ahead into round `r + 1` cannot overwrite a value another
/// worker is still reading for round `r`.
pub struct MinLocCommunicator {
    workers: usize,
    slots: [Vec<Mutex<MinLocPair>>; 2],
    barrier: Barrier,
}

impl MinLocCommunicator {
    pub fn new(workers: usize, padded_n: usize) -> MinLocCommunicator {
        let buf = || {
            (0..workers)
                .map(|_| Mutex::new(MinLocPair::exhausted(padded_n)))
                .collect()
        };
        MinLocCommunicator {
            workers,
            slots: [buf(), buf()],
            barrier: Barrier::new(workers),
        }
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    /// Contributes `mine` for `round` and returns the global winner. Every
    /// worker observes the same value.
    pub fn allreduce(&self, rank: usize, round: usize, mine: MinLocPair) -> MinLocPair {
        let slots = &self.slots[round % 2];
        *slots[rank].lock().expect("peer panicked") = mine;
        self.barrier.wait();
        allreduce_minloc(slots.iter().map(|s| *s.lock().expect("peer panicked")))
    }
}
