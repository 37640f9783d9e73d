//! Reference O(n²) Dijkstra over the adjacency matrix.

use crate::graph::Graph;
use crate::result::{check_source, EngineError, ShortestPathResult};
use crate::weight::Distance;

/// Work performed by one serial run.
///
/// Both counters are `n²` for every `n`-vertex graph: each of the `n` rounds
/// reads every distance entry during selection and examines every column of
/// the selected row, whether or not an edge is present.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounters {
    pub extract_min_scans: u64,
    pub relax_checks: u64,
}

/// Serial run output plus the order in which vertices with finite distance
/// were settled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerialRun {
    pub result: ShortestPathResult,
    pub counters: OpCounters,
    pub visit_order: Vec<usize>,
}

pub fn dijkstra_serial(
    g: &Graph,
    source: usize,
) -> Result<(ShortestPathResult, OpCounters), EngineError> {
    let run = dijkstra_serial_traced(g, source)?;
    Ok((run.result, run.counters))
}

/// [`dijkstra_serial`] that also records the settle order.
///
/// Runs exactly `n` rounds. Each round selects the unvisited vertex with the
/// smallest distance, lowest id first on ties; once only unreachable vertices
/// remain they are still selected, and their relaxations are no-ops.
pub fn dijkstra_serial_traced(g: &Graph, source: usize) -> Result<SerialRun, EngineError> {
    let n = g.n();
    check_source(source, n)?;

    let mut dist = vec![Distance::INF; n];
    let mut pred = vec![None; n];
    let mut visited = vec![false; n];
    let mut counters = OpCounters::default();
    let mut visit_order = Vec::with_capacity(n);
    dist[source] = Distance::ZERO;

    for _ in 0..n {
        let mut u = None;
        for (v, &d) in dist.iter().enumerate() {
            counters.extract_min_scans += 1;
            if visited[v] {
                continue;
            }
            match u {
                Some(best) if dist[best] <= d => {}
                _ => u = Some(v),
            }
        }
        let u = u.expect("an unvisited vertex remains in every round");
        visited[u] = true;
        let du = dist[u];
        if du.is_finite() {
            visit_order.push(u);
        }

        for (v, &w) in g.row(u).iter().enumerate() {
            counters.relax_checks += 1;
            if visited[v] || !w.is_finite() || !du.is_finite() {
                continue;
            }
            let candidate = du.extend(w);
            if candidate < dist[v] {
                dist[v] = candidate;
                pred[v] = Some(u);
            }
        }
    }

    Ok(SerialRun {
        result: ShortestPathResult { source, dist, pred },
        counters,
        visit_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    const EXAMPLE_EDGES: &str = "4 5\n0 1 2\n0 2 4\n1 2 1\n1 3 3\n2 3 5\n";

    fn d(v: u64) -> Distance {
        Distance::new(v).unwrap()
    }

    #[test]
    fn example_graph_from_zero() {
        let g = parse_edge_list(EXAMPLE_EDGES, false).unwrap();
        let (r, c) = dijkstra_serial(&g, 0).unwrap();
        assert_eq!(r.dist, vec![d(0), d(2), d(3), d(5)]);
        assert_eq!(r.pred, vec![None, Some(0), Some(1), Some(1)]);
        assert_eq!(
            c,
            OpCounters {
                extract_min_scans: 16,
                relax_checks: 16
            }
        );
        assert_eq!(r.path_to(3), Some(vec![0, 1, 3]));
    }

    #[test]
    fn directed_sink_source() {
        let g = parse_edge_list(EXAMPLE_EDGES, true).unwrap();
        let (r, _) = dijkstra_serial(&g, 3).unwrap();
        assert_eq!(
            r.dist,
            vec![Distance::INF, Distance::INF, Distance::INF, d(0)]
        );
        assert_eq!(r.pred, vec![None; 4]);
        assert_eq!(r.path_to(0), None);
    }

    #[test]
    fn single_vertex() {
        let g = Graph::empty(1, false);
        let (r, c) = dijkstra_serial(&g, 0).unwrap();
        assert_eq!(r.dist, vec![d(0)]);
        assert_eq!(r.pred, vec![None]);
        assert_eq!(c.extract_min_scans, 1);
    }

    #[test]
    fn source_out_of_range() {
        let g = Graph::empty(3, false);
        assert_eq!(
            dijkstra_serial(&g, 3).unwrap_err(),
            EngineError::SourceOutOfRange { vertex: 3, n: 3 }
        );
    }

    #[test]
    fn visit_order_and_ties() {
        // 0 -> {1,2} both at distance 1; lower id settles first.
        let g = parse_edge_list("4 3\n0 2 1\n0 1 1\n2 3 1\n", false).unwrap();
        let run = dijkstra_serial_traced(&g, 0).unwrap();
        assert_eq!(run.visit_order, vec![0, 1, 2, 3]);
    }
}
