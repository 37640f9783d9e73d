//! Seeded random graph generators for the dense and sparse benchmark families.

use std::collections::HashSet;

use rand::rngs::ChaCha8Rng;
use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use thiserror::Error;

use crate::graph::{Edge, EdgeList, Graph};
use crate::weight::Weight;

/// Inclusive bounds of generated edge weights.
pub const MIN_GENERATED_WEIGHT: u32 = 1;
pub const MAX_GENERATED_WEIGHT: u32 = 100;

/// Sparse graphs carry this many edges per vertex.
pub const SPARSE_EDGE_FACTOR: usize = 3;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenerateError {
    #[error("{kind} graph needs at least {min} vertices, got {n}")]
    TooFewVertices {
        kind: &'static str,
        n: usize,
        min: usize,
    },
}

/// The two generated graph families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Dense,
    Sparse,
}

impl GraphKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphKind::Dense => "dense",
            GraphKind::Sparse => "sparse",
        }
    }

    pub fn generate(self, n: usize, seed: u64) -> Result<EdgeList, GenerateError> {
        match self {
            GraphKind::Dense => generate_dense(n, seed),
            GraphKind::Sparse => generate_sparse(n, seed),
        }
    }
}

impl std::str::FromStr for GraphKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dense" => Ok(GraphKind::Dense),
            "sparse" => Ok(GraphKind::Sparse),
            other => Err(format!(
                "unknown graph kind `{other}` (expected dense or sparse)"
            )),
        }
    }
}

fn random_weight(rng: &mut ChaCha8Rng) -> Weight {
    Weight::new(rng.random_range(MIN_GENERATED_WEIGHT..=MAX_GENERATED_WEIGHT)).expect("in range")
}

/// Complete undirected graph: every pair `u < v` once, in lexicographic order.
pub fn generate_dense(n: usize, seed: u64) -> Result<EdgeList, GenerateError> {
    if n < 2 {
        return Err(GenerateError::TooFewVertices {
            kind: "dense",
            n,
            min: 2,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push(Edge {
                u,
                v,
                w: random_weight(&mut rng),
            });
        }
    }
    Ok(EdgeList { n, edges })
}

/// Smallest `n` for which `3n` distinct undirected edges exist.
pub fn min_sparse_vertices() -> usize {
    (2..)
        .find(|&n| SPARSE_EDGE_FACTOR * n <= n * (n - 1) / 2)
        .expect("bounded search")
}

/// Connected undirected graph with exactly `3n` distinct edges.
///
/// A chain over a shuffled vertex order contributes `n - 1` edges and makes
/// the graph connected; the remaining `2n + 1` edges are distinct uniformly
/// random pairs. Edges are emitted chain first, then in sampling order.
pub fn generate_sparse(n: usize, seed: u64) -> Result<EdgeList, GenerateError> {
    let min = min_sparse_vertices();
    if n < min {
        return Err(GenerateError::TooFewVertices {
            kind: "sparse",
            n,
            min,
        });
    }
    let target = SPARSE_EDGE_FACTOR * n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);

    let mut seen = HashSet::with_capacity(target);
    let mut edges = Vec::with_capacity(target);
    for pair in order.windows(2) {
        let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        seen.insert((u, v));
        edges.push(Edge {
            u,
            v,
            w: random_weight(&mut rng),
        });
    }
    while edges.len() < target {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a == b {
            continue;
        }
        let (u, v) = (a.min(b), a.max(b));
        if seen.insert((u, v)) {
            edges.push(Edge {
                u,
                v,
                w: random_weight(&mut rng),
            });
        }
    }
    Ok(EdgeList { n, edges })
}

/// Generated graph filled as a matrix. Directed fills give each edge a
/// random orientation so the result is not simply upper-triangular.
pub fn random_graph(
    kind: GraphKind,
    n: usize,
    directed: bool,
    seed: u64,
) -> Result<Graph, GenerateError> {
    let mut list = kind.generate(n, seed)?;
    if directed {
        let mut rng = ChaCha8Rng::seed_from_u64(!seed);
        for e in &mut list.edges {
            if rng.random_bool(0.5) {
                std::mem::swap(&mut e.u, &mut e.v);
            }
        }
    }
    Ok(Graph::from_edge_list(&list, directed).expect("generated edges are valid"))
}
