//! Padding and 1D column decomposition for the partitioned engine.

use std::ops::Range;

use crate::graph::{Graph, GraphError};
use crate::weight::Weight;

/// Smallest vertex count that is a multiple of `workers`, at least `n`, and
/// at least `workers`. With more workers than vertices every worker still gets
/// one column.
pub fn pad_vertex_count(n: usize, workers: usize) -> usize {
    assert!(
        n >= 1 && workers >= 1,
        "pad_vertex_count needs n >= 1 and workers >= 1"
    );
    if workers > n {
        workers
    } else {
        n + (workers - n % workers) % workers
    }
}

/// Embeds `g` in a `padded_n x padded_n` matrix. Added vertices are isolated:
/// their rows and columns are `INF` except for a zero diagonal.
pub fn pad_graph(g: &Graph, padded_n: usize) -> Result<Graph, GraphError> {
    let n = g.n();
    if padded_n < n {
        return Err(GraphError::PadTooSmall { n, padded_n });
    }
    if padded_n == n {
        return Ok(g.clone());
    }
    let mut adj = vec![Weight::INF; padded_n * padded_n];
    for u in 0..n {
        adj[u * padded_n..u * padded_n + n].copy_from_slice(g.row(u));
    }
    for v in n..padded_n {
        adj[v * padded_n + v] = Weight::ZERO;
    }
    Graph::from_matrix(padded_n, g.is_directed(), adj)
}

/// Column ownership for `workers` equal-width blocks over a padded matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionPlan {
    pub n: usize,
    pub workers: usize,
    pub padded_n: usize,
    pub loc_n: usize,
}

impl PartitionPlan {
    pub fn new(n: usize, workers: usize) -> PartitionPlan {
        let padded_n = pad_vertex_count(n, workers);
        PartitionPlan {
            n,
            workers,
            padded_n,
            loc_n: padded_n / workers,
        }
    }

    /// Half-open global column interval owned by `rank`.
    pub fn range(&self, rank: usize) -> Range<usize> {
        rank * self.loc_n..(rank + 1) * self.loc_n
    }

    pub fn ranges(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        (0..self.workers).map(|k| self.range(k))
    }

    /// Rank owning global column `v`.
    pub fn owner(&self, v: usize) -> usize {
        v / self.loc_n
    }
}

pub fn make_partition_plan(n: usize, workers: usize) -> PartitionPlan {
    PartitionPlan::new(n, workers)
}
