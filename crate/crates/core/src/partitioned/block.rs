use std::ops::Range;

use crate::graph::Graph;
use crate::partition::{pad_graph, PartitionPlan};
use crate::weight::{Distance, Weight};

/// Candidate for the globally closest unvisited vertex.
///
/// Field order gives the derived `Ord` its lexicographic meaning: distance
/// first, then vertex id, so every reduction has exactly one winner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MinLocPair {
    pub dist: Distance,
    pub vertex: usize,
}

impl MinLocPair {
    /// Loses to every real candidate.
    pub fn exhausted(padded_n: usize) -> MinLocPair {
        MinLocPair {
            dist: Distance::INF,
            vertex: padded_n,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        !self.dist.is_finite()
    }
}

/// One worker's share of the padded matrix: every row, owned columns only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnBlock {
    pub owner: usize,
    pub cols: Range<usize>,
    padded_n: usize,
    /// `padded_n x loc_n`, row-major.
    adj_block: Vec<Weight>,
    pub loc_dist: Vec<Distance>,
    pub loc_pred: Vec<Option<usize>>,
    pub loc_visited: Vec<bool>,
    pub relax_checks: u64,
}

impl ColumnBlock {
    fn from_columns(
        owner: usize,
        cols: Range<usize>,
        padded_n: usize,
        adj_block: Vec<Weight>,
    ) -> ColumnBlock {
        let loc_n = cols.len();
        debug_assert_eq!(adj_block.len(), padded_n * loc_n);
        ColumnBlock {
            owner,
            cols,
            padded_n,
            adj_block,
            loc_dist: vec![Distance::INF; loc_n],
            loc_pred: vec![None; loc_n],
            loc_visited: vec![false; loc_n],
            relax_checks: 0,
        }
    }

    pub fn loc_n(&self) -> usize {
        self.cols.len()
    }

    pub fn padded_n(&self) -> usize {
        self.padded_n
    }

    pub fn owns(&self, v: usize) -> bool {
        self.cols.contains(&v)
    }

    /// Owned slice of row `u`.
    pub fn row(&self, u: usize) -> &[Weight] {
        let loc_n = self.loc_n();
        &self.adj_block[u * loc_n..(u + 1) * loc_n]
    }

    /// Resets local state for a run from `source`.
    pub fn init(&mut self, source: usize) {
        self.loc_dist.fill(Distance::INF);
        self.loc_pred.fill(None);
        self.loc_visited.fill(false);
        self.relax_checks = 0;
        if self.owns(source) {
            self.loc_dist[source - self.cols.start] = Distance::ZERO;
        }
    }

    /// Smallest `(dist, global id)` over unvisited owned columns with finite
    /// distance, or the exhausted sentinel.
    pub fn local_min(&self) -> MinLocPair {
        let start = self.cols.start;
        self.loc_dist
            .iter()
            .zip(&self.loc_visited)
            .enumerate()
            .filter(|&(_, (d, &seen))| !seen && d.is_finite())
            .map(|(i, (&dist, _))| MinLocPair {
                dist,
                vertex: start + i,
            })
            .min()
            .unwrap_or(MinLocPair::exhausted(self.padded_n))
    }

    /// Relaxes owned columns through the elected vertex `u` at distance `dist_u`.
    ///
    /// The owner of `u` marks it visited regardless of outcome. An exhausted
    /// election (`u == padded_n`) or an infinite `dist_u` changes no distance.
    pub fn relax_owned(&mut self, u: usize, dist_u: Distance) {
        if u >= self.padded_n {
            return;
        }
        let start = self.cols.start;
        if self.owns(u) {
            self.loc_visited[u - start] = true;
        }
        if !dist_u.is_finite() {
            return;
        }
        let loc_n = self.loc_n();
        let row = &self.adj_block[u * loc_n..(u + 1) * loc_n];
        self.relax_checks += loc_n as u64;
        for (i, &w) in row.iter().enumerate() {
            if self.loc_visited[i] || !w.is_finite() {
                continue;
            }
            let candidate = dist_u.extend(w);
            if candidate < self.loc_dist[i] {
                self.loc_dist[i] = candidate;
                self.loc_pred[i] = Some(u);
            }
        }
    }

    /// Bytes a non-root worker would receive in the scatter.
    pub(crate) fn payload_bytes(&self) -> u64 {
        (self.adj_block.len() * std::mem::size_of::<Weight>()) as u64
    }

    /// Bytes a non-root worker would send in the gather.
    pub(crate) fn result_bytes(&self) -> u64 {
        (self.loc_n() * (std::mem::size_of::<u64>() * 2)) as u64
    }
}

pub fn local_min(block: &ColumnBlock) -> MinLocPair {
    block.local_min()
}

pub fn relax_owned(block: &mut ColumnBlock, u: usize, dist_u: Distance) {
    block.relax_owned(u, dist_u)
}

/// Pads `g` to `plan.padded_n` and cuts it into one column block per worker,
/// in rank order. Each block is packed into its own contiguous buffer; only
/// blocks for ranks other than 0 count as scatter traffic.
pub fn scatter_columns(g: &Graph, plan: &PartitionPlan) -> Vec<ColumnBlock> {
    let padded = pad_graph(g, plan.padded_n).expect("plan is derived from this graph");
    let padded_n = plan.padded_n;
    plan.ranges()
        .enumerate()
        .map(|(rank, cols)| {
            let mut buf = Vec::with_capacity(padded_n * cols.len());
            for u in 0..padded_n {
                buf.extend_from_slice(&padded.row(u)[cols.clone()]);
            }
            ColumnBlock::from_columns(rank, cols, padded_n, buf)
        })
        .collect()
}
