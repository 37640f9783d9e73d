//! Single-source shortest paths over dense adjacency matrices.
//!
//! Three engines share one result type:
//!
//! - [`serial`]: the O(n²) matrix-scan Dijkstra, used as the correctness and
//!   timing baseline.
//! - [`partitioned`]: the same algorithm over a 1D column decomposition, with
//!   `p` barrier-synchronized workers electing the next vertex through a
//!   min-with-index all-reduce.
//! - [`dataparallel`]: per-vertex lanes relaxing with atomic minimum until a
//!   logical-or reduction reports no change.
//!
//! [`oracle`] holds an independent Floyd–Warshall referee and a validator for
//! shortest-path trees.

pub mod dataparallel;
pub mod engine;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod partition;
pub mod partitioned;
pub mod result;
pub mod serial;
pub mod weight;

pub use dataparallel::{dijkstra_dataparallel, LaneConfig, LaneExecutor, LaneSchedule};
pub use engine::{
    DataParallelEngine, EngineKind, EngineRun, PartitionedEngine, Phase, SerialEngine, SsspEngine,
};
pub use generate::{generate_dense, generate_sparse, random_graph, GraphKind};
pub use graph::{parse_edge_list, Edge, EdgeList, Graph, GraphError, ParseError};
pub use oracle::{all_pairs_bruteforce, validate_result, DistanceMatrix, Violation};
pub use partition::{make_partition_plan, pad_graph, pad_vertex_count, PartitionPlan};
pub use partitioned::{dijkstra_partitioned, CollectiveStats, Execution};
pub use result::{EngineError, ShortestPathResult};
pub use serial::{dijkstra_serial, OpCounters};
pub use weight::{Distance, Weight};
