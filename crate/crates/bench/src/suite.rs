//! Runs a configured grid and writes the timing and scaling reports.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use sssp_core::{EdgeList, EngineKind, Graph, Phase, ShortestPathResult};

use crate::config::{BenchConfig, GraphSpec};
use crate::scaling::ScalingRow;
use crate::timing::{engine_for, time_engine, GraphId, TimingRecord};
use crate::BenchError;

pub const TIMING_HEADER: [&str; 16] = [
    "engine",
    "graph_id",
    "n",
    "m",
    "workers",
    "reps",
    "phase_scatter_s",
    "phase_rounds_s",
    "phase_gather_s",
    "phase_transfer_in_s",
    "phase_transfer_out_s",
    "phase_algorithm_s",
    "total_s",
    "allreduce_count",
    "relax_checks",
    "seed",
];

pub const SCALING_HEADER: [&str; 5] = ["nodes", "procs", "time_s", "speedup", "efficiency_pct"];

const PHASE_COLUMNS: [Phase; 6] = [
    Phase::Scatter,
    Phase::Rounds,
    Phase::Gather,
    Phase::TransferIn,
    Phase::TransferOut,
    Phase::Algorithm,
];

#[derive(Clone, Debug, Default)]
pub struct BenchReport {
    /// In grid order: graphs outermost, then engines, then worker counts.
    pub timing: Vec<TimingRecord>,
    pub scaling: Vec<ScalingRow>,
    /// Relative totals against the serial run. Informational only.
    pub observations: Vec<String>,
}

/// `report.csv` pairs with `report.scaling.csv`.
pub fn scaling_path(report: &Path) -> PathBuf {
    report.with_extension("scaling.csv")
}

struct LoadedGraph {
    id: GraphId,
    seed: Option<u64>,
    graph: Graph,
}

fn load_graphs(cfg: &BenchConfig) -> Result<Vec<LoadedGraph>, BenchError> {
    let mut out = Vec::new();
    for spec in &cfg.graphs {
        match spec {
            GraphSpec::Generated { kind, n } => {
                for &seed in &cfg.seeds {
                    let list = kind.generate(*n, seed)?;
                    out.push(loaded(
                        format!("{}-n{n}-s{seed}", kind.as_str()),
                        Some(seed),
                        &list,
                        cfg.directed,
                    )?);
                }
            }
            GraphSpec::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|error| BenchError::Io {
                    path: path.clone(),
                    error,
                })?;
                let list = EdgeList::parse(&text).map_err(|error| BenchError::GraphFile {
                    path: path.clone(),
                    error,
                })?;
                let label = path.file_stem().map_or_else(
                    || path.display().to_string(),
                    |s| s.to_string_lossy().into_owned(),
                );
                out.push(loaded(label, None, &list, cfg.directed)?);
            }
        }
    }
    Ok(out)
}

fn loaded(
    label: String,
    seed: Option<u64>,
    list: &EdgeList,
    directed: bool,
) -> Result<LoadedGraph, BenchError> {
    Ok(LoadedGraph {
        id: GraphId {
            label,
            n: list.n,
            m: list.edges.len(),
        },
        seed,
        graph: Graph::from_edge_list(list, directed)?,
    })
}

fn first_divergence(reference: &ShortestPathResult, other: &ShortestPathResult) -> Option<usize> {
    reference
        .dist
        .iter()
        .zip(&other.dist)
        .position(|(a, b)| a != b)
}

/// Runs every engine configuration on every graph, one at a time.
///
/// All graphs are built before any timing starts. A run whose answer fails
/// validation, or whose distances differ from the first engine's on the same
/// graph, aborts the suite.
pub fn run_suite(cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    if cfg.engines.is_empty() || cfg.graphs.is_empty() {
        return Err(BenchError::NothingToRun);
    }
    if cfg.reps == 0 {
        return Err(BenchError::NoRepetitions);
    }
    if cfg.workers.contains(&0) {
        return Err(BenchError::InvalidWorkers);
    }
    let graphs = load_graphs(cfg)?;
    let mut report = BenchReport::default();
    for lg in &graphs {
        if cfg.source >= lg.graph.n() {
            return Err(BenchError::SourceOutOfRange {
                graph: lg.id.label.clone(),
                source_vertex: cfg.source,
                n: lg.graph.n(),
            });
        }
        let mut reference: Option<(EngineKind, ShortestPathResult)> = None;
        let start = report.timing.len();
        for &kind in &cfg.engines {
            let worker_counts: &[usize] = if kind == EngineKind::Partitioned {
                &cfg.workers
            } else {
                &[1]
            };
            for &workers in worker_counts {
                let engine = engine_for(kind, workers, cfg.lanes, cfg.group_size);
                let timed = time_engine(
                    engine.as_ref(),
                    &lg.graph,
                    &lg.id,
                    cfg.source,
                    cfg.reps,
                    lg.seed,
                )?;
                match &reference {
                    None => reference = Some((kind, timed.result)),
                    Some((ref_kind, ref_result)) => {
                        if let Some(v) = first_divergence(ref_result, &timed.result) {
                            return Err(BenchError::Mismatch {
                                graph: lg.id.label.clone(),
                                engine: kind,
                                workers: timed.record.workers,
                                reference: *ref_kind,
                                vertex: v,
                                expected: ref_result.dist[v].to_string(),
                                got: timed.result.dist[v].to_string(),
                            });
                        }
                    }
                }
                report.timing.push(timed.record);
            }
        }
        let records = &report.timing[start..];
        report.scaling.extend(scaling_rows(records)?);
        report.observations.extend(observations(records));
    }
    Ok(report)
}

/// Baseline `t1` is the one-worker partitioned time when present, else the
/// serial time. No baseline, no rows.
fn scaling_rows(records: &[TimingRecord]) -> Result<Vec<ScalingRow>, BenchError> {
    let partitioned: Vec<&TimingRecord> = records
        .iter()
        .filter(|r| r.engine == EngineKind::Partitioned)
        .collect();
    let t1 = partitioned
        .iter()
        .find(|r| r.workers == 1)
        .map(|r| r.total_s)
        .or_else(|| {
            records
                .iter()
                .find(|r| r.engine == EngineKind::Serial)
                .map(|r| r.total_s)
        });
    let Some(t1) = t1 else {
        return Ok(Vec::new());
    };
    partitioned
        .iter()
        .map(|r| ScalingRow::new(r.graph.n, r.workers, t1, r.total_s))
        .collect()
}

fn observations(records: &[TimingRecord]) -> Vec<String> {
    let Some(serial) = records.iter().find(|r| r.engine == EngineKind::Serial) else {
        return Vec::new();
    };
    records
        .iter()
        .filter(|r| match r.engine {
            EngineKind::Serial => false,
            EngineKind::Partitioned => r.workers > 1,
            EngineKind::DataParallel => true,
        })
        .map(|r| {
            let ratio = r.total_s / serial.total_s;
            format!(
                "{}: {} (parallelism {}) took {:.2}x the serial time, {}",
                r.graph.label,
                r.engine,
                r.workers,
                ratio,
                if ratio < 1.0 { "faster" } else { "not faster" }
            )
        })
        .collect()
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn secs(s: f64) -> String {
    format!("{s:.9}")
}

impl BenchReport {
    pub fn write_timing_csv<W: std::io::Write>(&self, out: W) -> Result<(), BenchError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(TIMING_HEADER)?;
        for r in &self.timing {
            let mut row = vec![
                r.engine.to_string(),
                r.graph.label.clone(),
                r.graph.n.to_string(),
                r.graph.m.to_string(),
                r.workers.to_string(),
                r.reps.to_string(),
            ];
            row.extend(PHASE_COLUMNS.iter().map(|&p| opt(r.phase(p).map(secs))));
            row.push(secs(r.total_s));
            row.push(opt(r.counters.allreduce_count));
            row.push(r.counters.relax_checks.to_string());
            row.push(opt(r.seed));
            w.write_record(&row)?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn write_scaling_csv<W: std::io::Write>(&self, out: W) -> Result<(), BenchError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(SCALING_HEADER)?;
        for s in &self.scaling {
            w.write_record([
                s.nodes.to_string(),
                s.procs.to_string(),
                secs(s.time_s),
                format!("{:.4}", s.speedup),
                format!("{:.2}", s.efficiency_pct),
            ])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    /// Writes `path` and its [`scaling_path`] sibling.
    pub fn write(&self, path: &Path) -> Result<(), BenchError> {
        let create = |p: &Path| {
            std::fs::File::create(p).map_err(|error| BenchError::Io {
                path: p.to_path_buf(),
                error,
            })
        };
        self.write_timing_csv(create(path)?)?;
        self.write_scaling_csv(create(&scaling_path(path))?)
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<13} {:<24} {:>7} {:>8} {:>8} {:>12} {:>14}",
            "engine", "graph", "n", "m", "workers", "total_s", "relax_checks"
        );
        for r in &self.timing {
            let _ = writeln!(
                s,
                "{:<13} {:<24} {:>7} {:>8} {:>8} {:>12.6} {:>14}",
                r.engine.as_str(),
                r.graph.label,
                r.graph.n,
                r.graph.m,
                r.workers,
                r.total_s,
                r.counters.relax_checks
            );
        }
        if !self.scaling.is_empty() {
            let _ = writeln!(
                s,
                "\n{:>7} {:>6} {:>12} {:>9} {:>9}",
                "nodes", "procs", "time_s", "speedup", "eff_%"
            );
            for row in &self.scaling {
                let _ = writeln!(
                    s,
                    "{:>7} {:>6} {:>12.6} {:>9.2} {:>9.2}",
                    row.nodes, row.procs, row.time_s, row.speedup, row.efficiency_pct
                );
            }
        }
        if !self.observations.is_empty() {
            s.push('\n');
            for o in &self.observations {
                let _ = writeln!(s, "note: {o}");
            }
        }
        s
    }
}
