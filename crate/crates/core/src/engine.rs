//! One interface over the three engines, with per-phase wall times.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::dataparallel::{
    run_dataparallel, LaneConfig, LaneExecutor, LaneSchedule, DEFAULT_GROUP_SIZE,
};
use crate::graph::Graph;
use crate::partitioned::{run_partitioned, Execution};
use crate::result::{EngineError, ShortestPathResult};
use crate::serial::dijkstra_serial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EngineKind {
    Serial,
    Partitioned,
    DataParallel,
}

impl EngineKind {
    pub const ALL: [EngineKind; 3] = [
        EngineKind::Serial,
        EngineKind::Partitioned,
        EngineKind::DataParallel,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EngineKind::Serial => "serial",
            EngineKind::Partitioned => "partitioned",
            EngineKind::DataParallel => "dataparallel",
        }
    }

    /// Phases this engine's timer covers. Graph loading and matrix
    /// construction are never included.
    pub fn phases(self) -> &'static [Phase] {
        match self {
            EngineKind::Serial => &[Phase::Algorithm],
            EngineKind::Partitioned => &[Phase::Scatter, Phase::Rounds, Phase::Gather],
            EngineKind::DataParallel => &[Phase::TransferIn, Phase::Rounds, Phase::TransferOut],
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EngineKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EngineKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| {
                format!("unknown engine `{s}` (expected serial, partitioned or dataparallel)")
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    Scatter,
    Rounds,
    Gather,
    TransferIn,
    TransferOut,
    Algorithm,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Scatter => "scatter",
            Phase::Rounds => "rounds",
            Phase::Gather => "gather",
            Phase::TransferIn => "transfer_in",
            Phase::TransferOut => "transfer_out",
            Phase::Algorithm => "algorithm",
        }
    }
}

/// Instrumentation gathered by whichever engine ran. Counters an engine does
/// not produce stay `None`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunCounters {
    pub relax_checks: u64,
    pub extract_min_scans: Option<u64>,
    pub allreduce_count: Option<u64>,
    pub rounds: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct EngineRun {
    pub result: ShortestPathResult,
    /// In [`EngineKind::phases`] order.
    pub phases: Vec<(Phase, Duration)>,
    pub counters: RunCounters,
}

impl EngineRun {
    pub fn total(&self) -> Duration {
        self.phases.iter().map(|(_, d)| *d).sum()
    }
}

pub trait SsspEngine {
    fn kind(&self) -> EngineKind;

    /// Degree of parallelism reported for a graph of `n` vertices: workers
    /// for the partitioned engine, lanes for the data-parallel one.
    fn parallelism(&self, n: usize) -> usize;

    fn run(&self, g: &Graph, source: usize) -> Result<EngineRun, EngineError>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SerialEngine;

impl SsspEngine for SerialEngine {
    fn kind(&self) -> EngineKind {
        EngineKind::Serial
    }

    fn parallelism(&self, _n: usize) -> usize {
        1
    }

    fn run(&self, g: &Graph, source: usize) -> Result<EngineRun, EngineError> {
        let started = Instant::now();
        let (result, ops) = dijkstra_serial(g, source)?;
        let elapsed = started.elapsed();
        Ok(EngineRun {
            result,
            phases: vec![(Phase::Algorithm, elapsed)],
            counters: RunCounters {
                relax_checks: ops.relax_checks,
                extract_min_scans: Some(ops.extract_min_scans),
                ..RunCounters::default()
            },
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PartitionedEngine {
    pub workers: usize,
    pub execution: Execution,
}

impl PartitionedEngine {
    pub fn new(workers: usize) -> PartitionedEngine {
        PartitionedEngine {
            workers,
            execution: Execution::Threaded,
        }
    }
}

impl SsspEngine for PartitionedEngine {
    fn kind(&self) -> EngineKind {
        EngineKind::Partitioned
    }

    fn parallelism(&self, _n: usize) -> usize {
        self.workers
    }

    fn run(&self, g: &Graph, source: usize) -> Result<EngineRun, EngineError> {
        let run = run_partitioned(g, source, self.workers, self.execution)?;
        Ok(EngineRun {
            result: run.result,
            phases: vec![
                (Phase::Scatter, run.phases.scatter),
                (Phase::Rounds, run.phases.rounds),
                (Phase::Gather, run.phases.gather),
            ],
            counters: RunCounters {
                relax_checks: run.relax_checks,
                allreduce_count: Some(run.stats.allreduce_count),
                rounds: Some(run.stats.allreduce_count),
                ..RunCounters::default()
            },
        })
    }
}

/// `lanes: None` means one lane per vertex.
#[derive(Clone, Copy, Debug)]
pub struct DataParallelEngine {
    pub lanes: Option<usize>,
    pub group_size: usize,
    pub schedule: LaneSchedule,
    pub threads: Option<usize>,
}

impl Default for DataParallelEngine {
    fn default() -> Self {
        DataParallelEngine {
            lanes: None,
            group_size: DEFAULT_GROUP_SIZE,
            schedule: LaneSchedule::InOrder,
            threads: None,
        }
    }
}

impl DataParallelEngine {
    pub fn executor(&self, n: usize) -> LaneExecutor {
        LaneExecutor {
            config: LaneConfig {
                lanes: self.parallelism(n),
                group_size: self.group_size,
            },
            schedule: self.schedule,
            threads: self.threads,
        }
    }
}

impl SsspEngine for DataParallelEngine {
    fn kind(&self) -> EngineKind {
        EngineKind::DataParallel
    }

    fn parallelism(&self, n: usize) -> usize {
        self.lanes.unwrap_or(n.max(1))
    }

    fn run(&self, g: &Graph, source: usize) -> Result<EngineRun, EngineError> {
        let run = run_dataparallel(g, source, &self.executor(g.n()))?;
        Ok(EngineRun {
            result: run.result,
            phases: vec![
                (Phase::TransferIn, run.phases.transfer_in),
                (Phase::Rounds, run.phases.rounds),
                (Phase::TransferOut, run.phases.transfer_out),
            ],
            counters: RunCounters {
                relax_checks: run.relax_checks,
                rounds: Some(run.rounds as u64),
                ..RunCounters::default()
            },
        })
    }
}
