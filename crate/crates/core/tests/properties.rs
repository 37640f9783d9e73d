use std::collections::HashSet;

use proptest::prelude::*;
use sssp_core::dataparallel::run_dataparallel;
use sssp_core::partitioned::run_partitioned;
use sssp_core::{
    all_pairs_bruteforce, dijkstra_serial, generate_dense, generate_sparse, make_partition_plan,
    pad_vertex_count, parse_edge_list, validate_result, Edge, EdgeList, Execution, Graph,
    LaneConfig, LaneExecutor, LaneSchedule, Weight,
};

/// Arbitrary small graph, zero weights and duplicate edges included.
fn arb_graph() -> impl Strategy<Value = (Graph, usize)> {
    (1usize..24, any::<bool>()).prop_flat_map(|(n, directed)| {
        let edge = (0..n, 0..n, 0u32..20);
        (
            prop::collection::vec(edge, 0..n * 3),
            Just(n),
            Just(directed),
            0..n,
        )
            .prop_map(|(raw, n, directed, source)| {
                let edges = raw
                    .into_iter()
                    .filter(|(u, v, _)| u != v)
                    .map(|(u, v, w)| Edge {
                        u,
                        v,
                        w: Weight::new(w).unwrap(),
                    })
                    .collect();
                (
                    Graph::from_edge_list(&EdgeList { n, edges }, directed).unwrap(),
                    source,
                )
            })
    })
}

proptest! {
    #[test]
    fn padding_is_a_minimal_multiple(n in 1usize..=10_000, p in 1usize..=10_000) {
        let padded = pad_vertex_count(n, p);
        prop_assert_eq!(padded % p, 0);
        prop_assert!(padded >= n.max(p));
        if p <= n {
            prop_assert!(padded - n < p);
        }
        let plan = make_partition_plan(n, p);
        prop_assert_eq!(plan.loc_n * p, plan.padded_n);
        let covered: usize = plan.ranges().map(|r| r.len()).sum();
        prop_assert_eq!(covered, plan.padded_n);
        prop_assert_eq!(plan.range(p - 1).end, plan.padded_n);
    }

    #[test]
    fn undirected_parse_is_symmetric(
        n in 2usize..30,
        raw in prop::collection::vec((0usize..30, 0usize..30, 0u32..1000), 0..80),
    ) {
        let edges: Vec<_> = raw.into_iter().filter(|(u, v, _)| u != v && *u < n && *v < n).collect();
        let mut text = format!("{n} {}\n", edges.len());
        for (u, v, w) in &edges {
            text.push_str(&format!("{u} {v} {w}\n"));
        }
        let g = parse_edge_list(&text, false).unwrap();
        for u in 0..n {
            for v in 0..n {
                prop_assert_eq!(g.weight(u, v), g.weight(v, u));
            }
        }
    }

    #[test]
    fn generators_are_deterministic_and_simple(n in 7usize..150, seed in any::<u64>()) {
        let sparse = generate_sparse(n, seed).unwrap();
        prop_assert_eq!(sparse.to_text(), generate_sparse(n, seed).unwrap().to_text());
        prop_assert_eq!(sparse.edges.len(), 3 * n);
        let mut seen = HashSet::new();
        for e in &sparse.edges {
            prop_assert!(e.u != e.v);
            prop_assert!(seen.insert((e.u.min(e.v), e.u.max(e.v))));
        }
        let dense = generate_dense(n, seed).unwrap();
        prop_assert_eq!(dense.edges.len(), n * (n - 1) / 2);
        prop_assert_eq!(dense.to_text(), generate_dense(n, seed).unwrap().to_text());
    }

    #[test]
    fn every_engine_agrees_with_the_oracle((g, source) in arb_graph(), p in 1usize..9, lanes in 1usize..9, seed in any::<u64>()) {
        let oracle = all_pairs_bruteforce(&g).unwrap();
        let expected = oracle.row(source);

        let (serial, _) = dijkstra_serial(&g, source).unwrap();
        prop_assert_eq!(&serial.dist[..], expected);
        prop_assert!(validate_result(&g, &serial).is_empty());

        let part = run_partitioned(&g, source, p, Execution::Sequential).unwrap();
        prop_assert_eq!(&part.result.dist[..], expected);
        prop_assert!(validate_result(&g, &part.result).is_empty());

        let exec = LaneExecutor::new(LaneConfig { lanes, group_size: 2 })
            .with_schedule(LaneSchedule::Fuzzed { seed });
        let dp = run_dataparallel(&g, source, &exec).unwrap();
        prop_assert_eq!(&dp.result.dist[..], expected);
        prop_assert!(validate_result(&g, &dp.result).is_empty());
        prop_assert!(dp.rounds <= g.n());
    }
}
