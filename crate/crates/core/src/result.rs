use thiserror::Error;

use crate::weight::Distance;

/// Distances and a shortest-path tree from one source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortestPathResult {
    pub source: usize,
    /// `dist[v]` is the shortest distance `source -> v`, `INF` if unreachable.
    pub dist: Vec<Distance>,
    /// Parent of `v` in the tree; `None` for the source and unreachable vertices.
    pub pred: Vec<Option<usize>>,
}

impl ShortestPathResult {
    pub fn n(&self) -> usize {
        self.dist.len()
    }

    /// Vertices from `source` to `target` along the predecessor tree, or
    /// `None` if `target` is unreachable.
    pub fn path_to(&self, target: usize) -> Option<Vec<usize>> {
        if !self.dist.get(target)?.is_finite() {
            return None;
        }
        let mut path = vec![target];
        let mut v = target;
        while let Some(p) = self.pred[v] {
            if path.len() > self.n() {
                return None;
            }
            path.push(p);
            v = p;
        }
        path.reverse();
        (path[0] == self.source).then_some(path)
    }

    pub fn reachable(&self) -> usize {
        self.dist.iter().filter(|d| d.is_finite()).count()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("source vertex {vertex} out of range for a graph with {n} vertices")]
    SourceOutOfRange { vertex: usize, n: usize },
    #[error("worker count must be at least 1")]
    NoWorkers,
    #[error(
        "lane count and group size must be at least 1 (got lanes={lanes}, group_size={group_size})"
    )]
    InvalidLanes { lanes: usize, group_size: usize },
    #[error("{buffer} buffer holds {actual} cells, expected {expected}")]
    SizeMismatch {
        buffer: &'static str,
        expected: usize,
        actual: usize,
    },
}

pub(crate) fn check_source(source: usize, n: usize) -> Result<(), EngineError> {
    if source < n {
        Ok(())
    } else {
        Err(EngineError::SourceOutOfRange { vertex: source, n })
    }
}
