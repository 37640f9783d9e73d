//! Brute-force all-pairs oracle and shortest-path-tree validation.
//!
//! Deliberately naive and self-contained: distances are computed with plain
//! `Option<u64>` arithmetic so nothing here shares a code path with the engines
//! it referees.

use std::fmt;

use thiserror::Error;

use crate::graph::Graph;
use crate::result::ShortestPathResult;
use crate::weight::Distance;

pub const DEFAULT_ORACLE_LIMIT: usize = 500;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, over the oracle limit of {limit}")]
    TooLarge { n: usize, limit: usize },
}

/// `d[u][v]` is the shortest distance `u -> v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> Distance {
        self.d[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[Distance] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    /// First `(u, k, v)` with `d[u][v] > d[u][k] + d[k][v]`, if any.
    pub fn triangle_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for k in 0..n {
            for u in 0..n {
                let Some(uk) = self.get(u, k).get() else {
                    continue;
                };
                for v in 0..n {
                    let Some(kv) = self.get(k, v).get() else {
                        continue;
                    };
                    if self.get(u, v).get().is_none_or(|uv| uv > uk + kv) {
                        return Some((u, k, v));
                    }
                }
            }
        }
        None
    }
}

pub fn all_pairs_bruteforce(g: &Graph) -> Result<DistanceMatrix, OracleError> {
    all_pairs_bruteforce_with_limit(g, DEFAULT_ORACLE_LIMIT)
}

/// Floyd–Warshall: dynamic programming over the set of allowed intermediates.
pub fn all_pairs_bruteforce_with_limit(
    g: &Graph,
    limit: usize,
) -> Result<DistanceMatrix, OracleError> {
    let n = g.n();
    if n > limit {
        return Err(OracleError::TooLarge { n, limit });
    }
    let mut d: Vec<Option<u64>> = g.matrix().iter().map(|w| w.get().map(u64::from)).collect();
    for k in 0..n {
        for u in 0..n {
            let Some(uk) = d[u * n + k] else { continue };
            for v in 0..n {
                if let Some(kv) = d[k * n + v] {
                    let through = uk + kv;
                    let cell = &mut d[u * n + v];
                    if cell.is_none_or(|cur| through < cur) {
                        *cell = Some(through);
                    }
                }
            }
        }
    }
    Ok(DistanceMatrix {
        n,
        d: d.into_iter()
            .map(|c| c.map_or(Distance::INF, |v| Distance::new(v).expect("finite")))
            .collect(),
    })
}

/// A broken clause of the shortest-path-result contract.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    LengthMismatch {
        expected: usize,
        dist: usize,
        pred: usize,
    },
    SourceOutOfRange {
        source: usize,
    },
    SourceDistanceNonzero {
        dist: Distance,
    },
    SourceHasPredecessor {
        pred: usize,
    },
    NotRelaxed {
        u: usize,
        v: usize,
    },
    MissingPredecessor {
        v: usize,
    },
    PredecessorOnUnreachable {
        v: usize,
    },
    PredecessorNoEdge {
        v: usize,
        pred: usize,
    },
    PredEdgeNotTight {
        v: usize,
        pred: usize,
    },
    PredecessorCycle {
        v: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::LengthMismatch {
                expected,
                dist,
                pred,
            } => {
                write!(
                    f,
                    "length mismatch: graph has {expected} vertices, dist {dist}, pred {pred}"
                )
            }
            Violation::SourceOutOfRange { source } => write!(f, "source {source} out of range"),
            Violation::SourceDistanceNonzero { dist } => {
                write!(f, "source distance nonzero ({dist})")
            }
            Violation::SourceHasPredecessor { pred } => write!(f, "source has predecessor {pred}"),
            Violation::NotRelaxed { u, v } => {
                write!(f, "edge ({u},{v}) not relaxed: dist[v] > dist[u] + w")
            }
            Violation::MissingPredecessor { v } => {
                write!(f, "reachable vertex {v} has no predecessor")
            }
            Violation::PredecessorOnUnreachable { v } => {
                write!(f, "unreachable vertex {v} has a predecessor")
            }
            Violation::PredecessorNoEdge { v, pred } => {
                write!(f, "pred[{v}] = {pred} but there is no edge ({pred},{v})")
            }
            Violation::PredEdgeNotTight { v, pred } => {
                write!(
                    f,
                    "pred edge not tight at {v}: dist[{pred}] + w({pred},{v}) != dist[{v}]"
                )
            }
            Violation::PredecessorCycle { v } => {
                write!(f, "predecessor chain from {v} does not reach the source")
            }
        }
    }
}

/// Every broken invariant of `r` as a shortest-path result on `g`; empty
/// means the result is a valid set of distances with a valid tree.
pub fn validate_result(g: &Graph, r: &ShortestPathResult) -> Vec<Violation> {
    let n = g.n();
    let mut out = Vec::new();
    if r.dist.len() != n || r.pred.len() != n {
        out.push(Violation::LengthMismatch {
            expected: n,
            dist: r.dist.len(),
            pred: r.pred.len(),
        });
        return out;
    }
    let s = r.source;
    if s >= n {
        out.push(Violation::SourceOutOfRange { source: s });
        return out;
    }
    if r.dist[s] != Distance::ZERO {
        out.push(Violation::SourceDistanceNonzero { dist: r.dist[s] });
    }
    if let Some(p) = r.pred[s] {
        out.push(Violation::SourceHasPredecessor { pred: p });
    }

    for u in 0..n {
        let Some(du) = r.dist[u].get() else { continue };
        for v in 0..n {
            if u == v {
                continue;
            }
            let Some(w) = g.weight(u, v).get() else {
                continue;
            };
            if r.dist[v].get().is_none_or(|dv| dv > du + u64::from(w)) {
                out.push(Violation::NotRelaxed { u, v });
            }
        }
    }

    let mut tree_ok = true;
    for v in (0..n).filter(|&v| v != s) {
        match (r.dist[v].get(), r.pred[v]) {
            (None, None) => {}
            (None, Some(_)) => {
                out.push(Violation::PredecessorOnUnreachable { v });
                tree_ok = false;
            }
            (Some(_), None) => {
                out.push(Violation::MissingPredecessor { v });
                tree_ok = false;
            }
            (Some(dv), Some(p)) => {
                let edge = (p < n && p != v).then(|| g.weight(p, v).get()).flatten();
                match edge {
                    None => {
                        out.push(Violation::PredecessorNoEdge { v, pred: p });
                        tree_ok = false;
                    }
                    Some(w) => {
                        if r.dist[p].get().map(|dp| dp + u64::from(w)) != Some(dv) {
                            out.push(Violation::PredEdgeNotTight { v, pred: p });
                        }
                    }
                }
            }
        }
    }

    if tree_ok {
        out.extend(
            chain_cycles(r)
                .into_iter()
                .map(|v| Violation::PredecessorCycle { v }),
        );
    }
    out
}

/// Reachable vertices whose predecessor chain never arrives at the source.
fn chain_cycles(r: &ShortestPathResult) -> Vec<usize> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Unknown,
        OnStack,
        Good,
        Bad,
    }
    let n = r.n();
    let mut mark = vec![Mark::Unknown; n];
    mark[r.source] = Mark::Good;
    let mut stack = Vec::new();
    for start in 0..n {
        if mark[start] != Mark::Unknown || !r.dist[start].is_finite() {
            continue;
        }
        let mut v = start;
        let outcome = loop {
            match mark[v] {
                Mark::Good => break Mark::Good,
                Mark::Bad | Mark::OnStack => break Mark::Bad,
                Mark::Unknown => {}
            }
            mark[v] = Mark::OnStack;
            stack.push(v);
            match r.pred[v] {
                Some(p) => v = p,
                None => break Mark::Bad,
            }
        };
        for v in stack.drain(..) {
            mark[v] = outcome;
        }
    }
    (0..n).filter(|&v| mark[v] == Mark::Bad).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;
    use crate::weight::Weight;

    const EXAMPLE_EDGES: &str = "4 5\n0 1 2\n0 2 4\n1 2 1\n1 3 3\n2 3 5\n";

    fn d(v: u64) -> Distance {
        Distance::new(v).unwrap()
    }

    /// Minimum over every simple path, enumerated by DFS. Only usable on tiny graphs.
    fn simple_path_minimum(g: &Graph, s: usize, t: usize) -> Option<u64> {
        fn go(
            g: &Graph,
            at: usize,
            t: usize,
            acc: u64,
            seen: &mut Vec<bool>,
            best: &mut Option<u64>,
        ) {
            if at == t {
                *best = Some(best.map_or(acc, |b| b.min(acc)));
                return;
            }
            for v in 0..g.n() {
                if seen[v] {
                    continue;
                }
                if let Some(w) = g.weight(at, v).get() {
                    seen[v] = true;
                    go(g, v, t, acc + u64::from(w), seen, best);
                    seen[v] = false;
                }
            }
        }
        let mut seen = vec![false; g.n()];
        seen[s] = true;
        let mut best = None;
        go(g, s, t, 0, &mut seen, &mut best);
        best
    }

    #[test]
    fn example_graph_matches_path_enumeration() {
        for directed in [false, true] {
            let g = parse_edge_list(EXAMPLE_EDGES, directed).unwrap();
            let m = all_pairs_bruteforce(&g).unwrap();
            for u in 0..4 {
                for v in 0..4 {
                    assert_eq!(
                        m.get(u, v).get(),
                        simple_path_minimum(&g, u, v),
                        "({u},{v})"
                    );
                }
            }
        }
        let g = parse_edge_list(EXAMPLE_EDGES, false).unwrap();
        assert_eq!(
            all_pairs_bruteforce(&g).unwrap().row(0),
            &[d(0), d(2), d(3), d(5)]
        );
    }

    #[test]
    fn edgeless_and_two_vertex() {
        let m = all_pairs_bruteforce(&Graph::empty(3, true)).unwrap();
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(m.get(u, v), if u == v { d(0) } else { Distance::INF });
            }
        }
        let g = parse_edge_list("2 1\n0 1 7\n", false).unwrap();
        let m = all_pairs_bruteforce(&g).unwrap();
        assert_eq!(m.row(0), &[d(0), d(7)]);
        assert_eq!(m.row(1), &[d(7), d(0)]);
        assert_eq!(m.triangle_violation(), None);
    }

    #[test]
    fn limit_is_enforced() {
        let g = Graph::empty(11, false);
        assert_eq!(
            all_pairs_bruteforce_with_limit(&g, 10),
            Err(OracleError::TooLarge { n: 11, limit: 10 })
        );
    }

    fn example_result() -> (Graph, ShortestPathResult) {
        let g = parse_edge_list(EXAMPLE_EDGES, false).unwrap();
        let r = ShortestPathResult {
            source: 0,
            dist: vec![d(0), d(2), d(3), d(5)],
            pred: vec![None, Some(0), Some(1), Some(1)],
        };
        (g, r)
    }

    #[test]
    fn valid_result_has_no_violations() {
        let (g, r) = example_result();
        assert!(validate_result(&g, &r).is_empty());
    }

    #[test]
    fn corrupted_results_are_reported() {
        let (g, good) = example_result();

        let mut r = good.clone();
        r.dist[0] = d(1);
        let v = validate_result(&g, &r);
        assert!(v.contains(&Violation::SourceDistanceNonzero { dist: d(1) }));
        assert!(v[0].to_string().contains("source distance nonzero"));

        // Tree edge 1 -> 3 exists but dist[1] + 3 != 6.
        let mut r = good.clone();
        r.dist[3] = d(6);
        let v = validate_result(&g, &r);
        assert!(v.contains(&Violation::PredEdgeNotTight { v: 3, pred: 1 }));
        assert!(v
            .iter()
            .any(|x| x.to_string().contains("pred edge not tight")));

        let mut r = good.clone();
        r.pred[3] = Some(0);
        assert!(validate_result(&g, &r).contains(&Violation::PredecessorNoEdge { v: 3, pred: 0 }));

        let mut r = good.clone();
        r.dist[3] = Distance::INF;
        let v = validate_result(&g, &r);
        assert!(v.contains(&Violation::NotRelaxed { u: 1, v: 3 }));
        assert!(v.contains(&Violation::PredecessorOnUnreachable { v: 3 }));

        let mut r = good.clone();
        r.pred[2] = None;
        assert!(validate_result(&g, &r).contains(&Violation::MissingPredecessor { v: 2 }));

        let mut r = good;
        r.pred.pop();
        assert!(matches!(
            validate_result(&g, &r)[0],
            Violation::LengthMismatch { .. }
        ));
    }

    #[test]
    fn zero_weight_cycle_is_caught() {
        let mut adj = Graph::empty(3, false).matrix().to_vec();
        let zero = Weight::ZERO;
        let one = Weight::new(1).unwrap();
        // 0 -1- 1 -0- 2
        adj[1] = one;
        adj[3] = one;
        adj[5] = zero;
        adj[7] = zero;
        let g = Graph::from_matrix(3, false, adj).unwrap();
        let r = ShortestPathResult {
            source: 0,
            dist: vec![d(0), d(1), d(1)],
            pred: vec![None, Some(2), Some(1)],
        };
        let v = validate_result(&g, &r);
        assert!(v.contains(&Violation::PredecessorCycle { v: 1 }));
        assert!(v.contains(&Violation::PredecessorCycle { v: 2 }));
    }
}
