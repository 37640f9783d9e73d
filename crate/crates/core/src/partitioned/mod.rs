//! Dijkstra over a 1D column decomposition.
//!
//! `p` workers each own a contiguous block of columns of the padded adjacency
//! matrix together with the distance, predecessor and visited entries for
//! those columns. Every round each worker proposes its closest unvisited
//! column, a min-with-index all-reduce elects one global vertex, and every
//! worker relaxes its own columns through that vertex's row. After
//! `padded_n` rounds the blocks are gathered back into one result.

mod block;
mod collective;

use std::thread;
use std::time::{Duration, Instant};

pub use block::{local_min, relax_owned, scatter_columns, ColumnBlock, MinLocPair};
pub use collective::{allreduce_minloc, MinLocCommunicator};

use crate::graph::Graph;
use crate::partition::PartitionPlan;
use crate::result::{check_source, EngineError, ShortestPathResult};

/// How the logical workers are mapped onto OS threads.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    /// One OS thread per worker, synchronized by the all-reduce barrier.
    #[default]
    Threaded,
    /// All workers multiplexed onto the calling thread in rank order.
    Sequential,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CollectiveStats {
    pub allreduce_count: u64,
    pub scatter_bytes: u64,
    pub gather_bytes: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PartitionedPhases {
    pub scatter: Duration,
    pub rounds: Duration,
    pub gather: Duration,
}

#[derive(Clone, Debug)]
pub struct PartitionedRun {
    pub result: ShortestPathResult,
    pub stats: CollectiveStats,
    pub phases: PartitionedPhases,
    pub plan: PartitionPlan,
    /// Vertices elected with a finite distance, in round order.
    pub elected: Vec<usize>,
    /// Column examinations summed over all workers.
    pub relax_checks: u64,
}

pub fn dijkstra_partitioned(
    g: &Graph,
    source: usize,
    workers: usize,
) -> Result<(ShortestPathResult, CollectiveStats), EngineError> {
    let run = run_partitioned(g, source, workers, Execution::Threaded)?;
    Ok((run.result, run.stats))
}

pub fn run_partitioned(
    g: &Graph,
    source: usize,
    workers: usize,
    execution: Execution,
) -> Result<PartitionedRun, EngineError> {
    if workers == 0 {
        return Err(EngineError::NoWorkers);
    }
    check_source(source, g.n())?;

    let started = Instant::now();
    let plan = PartitionPlan::new(g.n(), workers);
    let mut blocks = scatter_columns(g, &plan);
    for b in &mut blocks {
        b.init(source);
    }
    let scatter_bytes = blocks.iter().skip(1).map(ColumnBlock::payload_bytes).sum();
    let scatter = started.elapsed();

    let started = Instant::now();
    let (blocks, elected, allreduce_count) = match execution {
        Execution::Threaded if workers > 1 => rounds_threaded(blocks, plan.padded_n),
        _ => rounds_sequential(blocks, plan.padded_n),
    };
    let rounds = started.elapsed();

    let started = Instant::now();
    let gather_bytes = blocks.iter().skip(1).map(ColumnBlock::result_bytes).sum();
    let relax_checks = blocks.iter().map(|b| b.relax_checks).sum();
    let mut dist = Vec::with_capacity(plan.padded_n);
    let mut pred = Vec::with_capacity(plan.padded_n);
    for b in &blocks {
        dist.extend_from_slice(&b.loc_dist);
        pred.extend_from_slice(&b.loc_pred);
    }
    dist.truncate(plan.n);
    pred.truncate(plan.n);
    let gather = started.elapsed();

    Ok(PartitionedRun {
        result: ShortestPathResult { source, dist, pred },
        stats: CollectiveStats {
            allreduce_count,
            scatter_bytes,
            gather_bytes,
        },
        phases: PartitionedPhases {
            scatter,
            rounds,
            gather,
        },
        plan,
        elected,
        relax_checks,
    })
}

type RoundsOutcome = (Vec<ColumnBlock>, Vec<usize>, u64);

fn rounds_sequential(mut blocks: Vec<ColumnBlock>, padded_n: usize) -> RoundsOutcome {
    let mut elected = Vec::new();
    let mut count = 0;
    for _ in 0..padded_n {
        let winner = allreduce_minloc(blocks.iter().map(ColumnBlock::local_min));
        count += 1;
        for b in &mut blocks {
            b.relax_owned(winner.vertex, winner.dist);
        }
        if !winner.is_exhausted() {
            elected.push(winner.vertex);
        }
    }
    (blocks, elected, count)
}

fn rounds_threaded(blocks: Vec<ColumnBlock>, padded_n: usize) -> RoundsOutcome {
    let comm = MinLocCommunicator::new(blocks.len(), padded_n);
    let finished: Vec<(ColumnBlock, Vec<usize>, u64)> = thread::scope(|s| {
        let handles: Vec<_> = blocks
            .into_iter()
            .map(|mut block| {
                let comm = &comm;
                s.spawn(move || {
                    let rank = block.owner;
                    let mut elected = Vec::new();
                    let mut count = 0;
                    for round in 0..padded_n {
                        let winner = comm.allreduce(rank, round, block.local_min());
                        count += 1;
                        block.relax_owned(winner.vertex, winner.dist);
                        if !winner.is_exhausted() {
                            elected.push(winner.vertex);
                        }
                    }
                    (block, elected, count)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("partitioned worker panicked"))
            .collect()
    });
    // Every worker saw the same elections; keep rank 0's record.
    let mut blocks = Vec::with_capacity(finished.len());
    let mut record = None;
    for (block, elected, count) in finished {
        record.get_or_insert((elected, count));
        blocks.push(block);
    }
    let (elected, count) = record.expect("at least one worker");
    (blocks, elected, count)
}
