//! Benchmark harness for the `sssp-core` engines.
//!
//! A suite is a grid of engines, worker counts and graphs read from a small
//! `key = value` config ([`config`]). Every timed run is validated before it
//! is recorded, and all engines must agree on every graph's distances.

pub mod config;
pub mod scaling;
pub mod suite;
pub mod timing;

use std::path::PathBuf;

use sssp_core::generate::GenerateError;
use sssp_core::{EngineError, EngineKind, GraphError, ParseError};
use thiserror::Error;

pub use config::{BenchConfig, GraphSpec};
pub use scaling::{round2, speedup, strong_scaling_efficiency, ScalingRow};
pub use suite::{run_suite, scaling_path, BenchReport, SCALING_HEADER, TIMING_HEADER};
pub use timing::{engine_for, time_engine, GraphId, Timed, TimingRecord};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("config lists no engines or no graphs; nothing to run")]
    NothingToRun,
    #[error("reps must be at least 1")]
    NoRepetitions,
    #[error("worker count must be at least 1")]
    InvalidWorkers,
    #[error("{name} must be a positive time in seconds, got {seconds}")]
    NonPositiveTime { name: &'static str, seconds: f64 },
    #[error("{engine} produced an invalid result on {graph}: {}", violations.join("; "))]
    Validation {
        engine: EngineKind,
        graph: String,
        violations: Vec<String>,
    },
    #[error("{engine} (parallelism {workers}) disagrees with {reference} on {graph} at vertex {vertex}: {got} vs {expected}")]
    Mismatch {
        graph: String,
        engine: EngineKind,
        workers: usize,
        reference: EngineKind,
        vertex: usize,
        expected: String,
        got: String,
    },
    #[error("source {source_vertex} out of range for {graph} with {n} vertices")]
    SourceOutOfRange {
        graph: String,
        source_vertex: usize,
        n: usize,
    },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("{path}: {error}")]
    GraphFile { path: PathBuf, error: ParseError },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error("{path}: {error}")]
    Io {
        path: PathBuf,
        error: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
