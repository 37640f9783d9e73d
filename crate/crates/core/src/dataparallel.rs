//! Data-parallel relaxation to a fixpoint.
//!
//! One logical lane per vertex `u` scans row `u` and lowers `dist[v]` with an
//! atomic minimum wherever `dist[u] + w(u,v)` improves it. Rounds repeat until
//! a logical-or over the per-vertex `updated` flags comes back false. This is
//! Bellman–Ford style label correcting; with non-negative weights its fixpoint
//! is exactly the Dijkstra distance array.
//!
//! Each round relaxes from a snapshot of `dist` taken at the round boundary,
//! so after round `r` every vertex with an `r`-hop shortest path is final.
//! The predecessor stores made by racing lanes are not coupled to the winning
//! distance, so the finished engine rebuilds the tree from tight edges.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering::Relaxed};
use std::thread;
use std::time::{Duration, Instant};

use rand::rngs::ChaCha8Rng;
use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};

use crate::graph::Graph;
use crate::result::{check_source, EngineError, ShortestPathResult};
use crate::weight::{Distance, Weight};

const NO_PRED: usize = usize::MAX;

/// Lanes per scheduling group when none is given; the width of a GPU warp.
pub const DEFAULT_GROUP_SIZE: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LaneConfig {
    pub lanes: usize,
    pub group_size: usize,
}

impl LaneConfig {
    /// One lane per vertex.
    pub fn per_vertex(n: usize) -> LaneConfig {
        LaneConfig {
            lanes: n.max(1),
            group_size: DEFAULT_GROUP_SIZE,
        }
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        if self.lanes == 0 || self.group_size == 0 {
            return Err(EngineError::InvalidLanes {
                lanes: self.lanes,
                group_size: self.group_size,
            });
        }
        Ok(())
    }

    fn groups(&self) -> usize {
        self.lanes.div_ceil(self.group_size)
    }
}

/// Order in which each OS thread walks its groups, lanes and vertices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LaneSchedule {
    #[default]
    InOrder,
    /// Seeded shuffles at every level plus random yields between vertices.
    Fuzzed { seed: u64 },
}

/// How lanes are mapped onto OS threads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LaneExecutor {
    pub config: LaneConfig,
    pub schedule: LaneSchedule,
    /// OS threads; `None` picks `min(groups, available parallelism)`.
    pub threads: Option<usize>,
}

impl LaneExecutor {
    pub fn new(config: LaneConfig) -> LaneExecutor {
        LaneExecutor {
            config,
            schedule: LaneSchedule::InOrder,
            threads: None,
        }
    }

    pub fn with_schedule(mut self, schedule: LaneSchedule) -> LaneExecutor {
        self.schedule = schedule;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> LaneExecutor {
        self.threads = Some(threads.max(1));
        self
    }

    fn thread_count(&self) -> usize {
        let groups = self.config.groups();
        let wanted = self
            .threads
            .unwrap_or_else(|| thread::available_parallelism().map_or(1, |p| p.get()));
        wanted.min(groups).max(1)
    }
}

/// Shared per-round state. All cross-lane access goes through atomics.
pub struct RelaxState {
    dist: Vec<AtomicU64>,
    snapshot: Vec<AtomicU64>,
    pred: Vec<AtomicUsize>,
    updated: Vec<AtomicBool>,
    relax_checks: AtomicU64,
    pub rounds_executed: usize,
}

impl RelaxState {
    pub fn new(dist: &[Distance], pred: &[Option<usize>]) -> RelaxState {
        assert_eq!(dist.len(), pred.len());
        RelaxState {
            dist: dist.iter().map(|d| AtomicU64::new(d.to_bits())).collect(),
            snapshot: dist.iter().map(|d| AtomicU64::new(d.to_bits())).collect(),
            pred: pred
                .iter()
                .map(|p| AtomicUsize::new(p.unwrap_or(NO_PRED)))
                .collect(),
            updated: (0..dist.len()).map(|_| AtomicBool::new(false)).collect(),
            relax_checks: AtomicU64::new(0),
            rounds_executed: 0,
        }
    }

    /// `INF` everywhere except `dist[source] = 0`; no predecessors.
    pub fn for_source(n: usize, source: usize) -> RelaxState {
        let mut dist = vec![Distance::INF; n];
        dist[source] = Distance::ZERO;
        RelaxState::new(&dist, &vec![None; n])
    }

    pub fn n(&self) -> usize {
        self.dist.len()
    }

    pub fn dist(&self) -> Vec<Distance> {
        self.dist
            .iter()
            .map(|d| Distance::from_bits(d.load(Relaxed)))
            .collect()
    }

    /// Predecessors as last stored by winning lanes.
    pub fn pred(&self) -> Vec<Option<usize>> {
        self.pred
            .iter()
            .map(|p| Some(p.load(Relaxed)).filter(|&p| p != NO_PRED))
            .collect()
    }

    pub fn updated(&self) -> Vec<bool> {
        self.updated.iter().map(|u| u.load(Relaxed)).collect()
    }

    pub fn relax_checks(&self) -> u64 {
        self.relax_checks.load(Relaxed)
    }

    fn begin_round(&self) {
        for (flag, (snap, live)) in self
            .updated
            .iter()
            .zip(self.snapshot.iter().zip(&self.dist))
        {
            flag.store(false, Relaxed);
            snap.store(live.load(Relaxed), Relaxed);
        }
    }

    fn any_updated(&self) -> bool {
        self.updated.iter().any(|u| u.load(Relaxed))
    }

    /// Lane body for vertex `u`.
    fn relax_from(&self, adj: &[Weight], n: usize, u: usize) {
        self.relax_checks.fetch_add(n as u64, Relaxed);
        let du = Distance::from_bits(self.snapshot[u].load(Relaxed));
        if !du.is_finite() {
            return;
        }
        for (v, &w) in adj[u * n..(u + 1) * n].iter().enumerate() {
            if !w.is_finite() {
                continue;
            }
            let candidate = du.extend(w).to_bits();
            if candidate < self.dist[v].load(Relaxed) {
                let old = self.dist[v].fetch_min(candidate, Relaxed);
                if candidate < old {
                    self.pred[v].store(u, Relaxed);
                    self.updated[v].store(true, Relaxed);
                }
            }
        }
    }
}

/// One synchronous round over every vertex. Resets `updated`, snapshots
/// `dist`, runs all lanes, then returns the logical-or of `updated`.
pub fn relax_round(g: &Graph, state: &mut RelaxState, exec: &LaneExecutor) -> bool {
    assert_eq!(g.n(), state.n(), "state sized for a different graph");
    relax_round_on(g.matrix(), g.n(), state, exec)
}

fn relax_round_on(adj: &[Weight], n: usize, state: &mut RelaxState, exec: &LaneExecutor) -> bool {
    state.begin_round();
    let round = state.rounds_executed;
    let threads = exec.thread_count();
    let shared: &RelaxState = state;
    if threads == 1 {
        run_lanes(adj, n, shared, exec, round, 0, 1);
    } else {
        thread::scope(|s| {
            for tid in 0..threads {
                s.spawn(move || run_lanes(adj, n, shared, exec, round, tid, threads));
            }
        });
    }
    state.rounds_executed += 1;
    state.any_updated()
}

/// Work of OS thread `tid`: groups `tid, tid + threads, ...`; inside a group,
/// its lanes; lane `l` handles vertices `l, l + lanes, ...`.
fn run_lanes(
    adj: &[Weight],
    n: usize,
    state: &RelaxState,
    exec: &LaneExecutor,
    round: usize,
    tid: usize,
    threads: usize,
) {
    let LaneConfig { lanes, group_size } = exec.config;
    let groups = exec.config.groups();
    let lanes_of = |g: usize| g * group_size..((g + 1) * group_size).min(lanes);

    match exec.schedule {
        LaneSchedule::InOrder => {
            for g in (tid..groups).step_by(threads) {
                for lane in lanes_of(g) {
                    for u in (lane..n).step_by(lanes) {
                        state.relax_from(adj, n, u);
                    }
                }
            }
        }
        LaneSchedule::Fuzzed { seed } => {
            let stream = (round as u64) << 32 | tid as u64;
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let mut my_groups: Vec<usize> = (tid..groups).step_by(threads).collect();
            my_groups.shuffle(&mut rng);
            for g in my_groups {
                let mut group_lanes: Vec<usize> = lanes_of(g).collect();
                group_lanes.shuffle(&mut rng);
                for lane in group_lanes {
                    let mut vertices: Vec<usize> = (lane..n).step_by(lanes).collect();
                    vertices.shuffle(&mut rng);
                    for u in vertices {
                        state.relax_from(adj, n, u);
                        if rng.random_bool(0.05) {
                            thread::yield_now();
                        }
                    }
                }
            }
        }
    }
}

/// Deterministic shortest-path tree over tight edges of a converged `dist`.
///
/// Breadth-first from the source over edges with `dist[u] + w == dist[v]`.
/// Each vertex takes as parent the lowest-id tight in-neighbour from the
/// earliest layer that reaches it, which keeps every chain acyclic even across
/// zero-weight edges.
pub fn reconstruct_predecessors(g: &Graph, dist: &[Distance], source: usize) -> Vec<Option<usize>> {
    tight_tree(g.matrix(), g.n(), dist, source)
}

fn tight_tree(adj: &[Weight], n: usize, dist: &[Distance], source: usize) -> Vec<Option<usize>> {
    let mut pred = vec![None; n];
    let mut attached = vec![false; n];
    attached[source] = true;
    let mut frontier = vec![source];
    while !frontier.is_empty() {
        frontier.sort_unstable();
        let mut next = Vec::new();
        for &u in &frontier {
            let du = dist[u];
            for (v, &w) in adj[u * n..(u + 1) * n].iter().enumerate() {
                if attached[v] || !w.is_finite() {
                    continue;
                }
                if du.extend(w) == dist[v] {
                    attached[v] = true;
                    pred[v] = Some(u);
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    pred
}

/// Engine-side copies of the adjacency matrix and result arrays.
#[derive(Clone, Debug, Default)]
pub struct DeviceBuffers {
    pub adj: Vec<Weight>,
    pub dist: Vec<Distance>,
    pub pred: Vec<Option<usize>>,
}

impl DeviceBuffers {
    pub fn allocate(n: usize) -> DeviceBuffers {
        DeviceBuffers {
            adj: vec![Weight::INF; n * n],
            dist: vec![Distance::INF; n],
            pred: vec![None; n],
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TransferStats {
    pub weight_cells: usize,
    pub result_cells: usize,
    pub bytes: usize,
    pub elapsed: Duration,
}

fn expect_len(buffer: &'static str, expected: usize, actual: usize) -> Result<(), EngineError> {
    if expected == actual {
        Ok(())
    } else {
        Err(EngineError::SizeMismatch {
            buffer,
            expected,
            actual,
        })
    }
}

/// Host to engine: copies `matrix` (row-major `n x n`) and the initial
/// result arrays into `device`.
pub fn transfer_in(
    matrix: &[Weight],
    dist: &[Distance],
    pred: &[Option<usize>],
    device: &mut DeviceBuffers,
) -> Result<TransferStats, EngineError> {
    let n = dist.len();
    expect_len("host matrix", n * n, matrix.len())?;
    expect_len("host pred", n, pred.len())?;
    expect_len("device matrix", n * n, device.adj.len())?;
    expect_len("device dist", n, device.dist.len())?;
    expect_len("device pred", n, device.pred.len())?;
    let started = Instant::now();
    device.adj.copy_from_slice(matrix);
    device.dist.copy_from_slice(dist);
    device.pred.copy_from_slice(pred);
    Ok(TransferStats {
        weight_cells: matrix.len(),
        result_cells: 2 * n,
        bytes: std::mem::size_of_val(matrix)
            + std::mem::size_of_val(dist)
            + std::mem::size_of_val(pred),
        elapsed: started.elapsed(),
    })
}

/// Engine to host: copies the result arrays out of `device`.
pub fn transfer_out(
    device: &DeviceBuffers,
    dist: &mut [Distance],
    pred: &mut [Option<usize>],
) -> Result<TransferStats, EngineError> {
    expect_len("host dist", device.dist.len(), dist.len())?;
    expect_len("host pred", device.pred.len(), pred.len())?;
    let started = Instant::now();
    dist.copy_from_slice(&device.dist);
    pred.copy_from_slice(&device.pred);
    Ok(TransferStats {
        weight_cells: 0,
        result_cells: dist.len() + pred.len(),
        bytes: std::mem::size_of_val(dist) + std::mem::size_of_val(pred),
        elapsed: started.elapsed(),
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DataParallelPhases {
    pub transfer_in: Duration,
    pub rounds: Duration,
    pub transfer_out: Duration,
}

#[derive(Clone, Debug)]
pub struct DataParallelRun {
    pub result: ShortestPathResult,
    pub rounds: usize,
    pub relax_checks: u64,
    pub phases: DataParallelPhases,
    pub transfer_in: TransferStats,
    pub transfer_out: TransferStats,
}

pub fn dijkstra_dataparallel(
    g: &Graph,
    source: usize,
    config: LaneConfig,
) -> Result<(ShortestPathResult, usize), EngineError> {
    let run = run_dataparallel(g, source, &LaneExecutor::new(config))?;
    Ok((run.result, run.rounds))
}

pub fn run_dataparallel(
    g: &Graph,
    source: usize,
    exec: &LaneExecutor,
) -> Result<DataParallelRun, EngineError> {
    let n = g.n();
    check_source(source, n)?;
    exec.config.validate()?;

    let mut host_dist = vec![Distance::INF; n];
    host_dist[source] = Distance::ZERO;
    let mut host_pred = vec![None; n];

    let started = Instant::now();
    let mut device = DeviceBuffers::allocate(n);
    let stats_in = transfer_in(g.matrix(), &host_dist, &host_pred, &mut device)?;
    let transfer_in_time = started.elapsed();

    let started = Instant::now();
    let mut state = RelaxState::new(&device.dist, &device.pred);
    while relax_round_on(&device.adj, n, &mut state, exec) {}
    device.dist = state.dist();
    device.pred = tight_tree(&device.adj, n, &device.dist, source);
    let rounds_time = started.elapsed();

    let started = Instant::now();
    let stats_out = transfer_out(&device, &mut host_dist, &mut host_pred)?;
    drop(device);
    let transfer_out_time = started.elapsed();

    Ok(DataParallelRun {
        result: ShortestPathResult {
            source,
            dist: host_dist,
            pred: host_pred,
        },
        rounds: state.rounds_executed,
        relax_checks: state.relax_checks(),
        phases: DataParallelPhases {
            transfer_in: transfer_in_time,
            rounds: rounds_time,
            transfer_out: transfer_out_time,
        },
        transfer_in: stats_in,
        transfer_out: stats_out,
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

    /// Single-round reference: every vertex relaxes from the pre-round
    /// distances, written without atomics or lanes.
    fn one_round_reference(g: &Graph, dist: &[Distance]) -> Vec<Distance> {
        let mut out = dist.to_vec();
        for (u, du) in dist.iter().enumerate() {
            let Some(du) = du.get() else { continue };
            for (slot, w) in out.iter_mut().zip(g.row(u)) {
                if let Some(w) = w.get() {
                    let c = du + u64::from(w);
                    if slot.get().is_none_or(|cur| c < cur) {
                        *slot = d(c);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn first_round_on_example_graph() {
        let g = parse_edge_list(EXAMPLE_EDGES, false).unwrap();
        let mut state = RelaxState::for_source(4, 0);
        let exec = LaneExecutor::new(LaneConfig::per_vertex(4));
        let before = state.dist();
        assert!(relax_round(&g, &mut state, &exec));
        assert_eq!(state.dist(), vec![d(0), d(2), d(4), Distance::INF]);
        assert_eq!(state.dist(), one_round_reference(&g, &before));
        assert_eq!(state.updated(), vec![false, true, true, false]);
        assert_eq!(state.pred(), vec![None, Some(0), Some(0), None]);
    }

    #[test]
    fn fixpoint_round_reports_no_update() {
        let g = parse_edge_list(EXAMPLE_EDGES, false).unwrap();
        let dist = vec![d(0), d(2), d(3), d(5)];
        let mut state = RelaxState::new(&dist, &[None; 4]);
        let exec = LaneExecutor::new(LaneConfig::per_vertex(4));
        assert!(!relax_round(&g, &mut state, &exec));
        assert_eq!(state.dist(), dist);
    }

    #[test]
    fn edgeless_graph_is_a_fixpoint() {
        let g = Graph::empty(5, true);
        let dist = vec![d(0), d(9), Distance::INF, d(1), d(3)];
        let mut state = RelaxState::new(&dist, &[None; 5]);
        assert!(!relax_round(
            &g,
            &mut state,
            &LaneExecutor::new(LaneConfig::per_vertex(5))
        ));
        assert_eq!(state.dist(), dist);
    }

    #[test]
    fn example_graph_converges() {
        let g = parse_edge_list(EXAMPLE_EDGES, false).unwrap();
        let (r, rounds) = dijkstra_dataparallel(&g, 0, LaneConfig::per_vertex(4)).unwrap();
        assert_eq!(r.dist, vec![d(0), d(2), d(3), d(5)]);
        assert_eq!(r.pred, vec![None, Some(0), Some(1), Some(1)]);
        assert!(rounds <= 4, "{rounds} rounds");
    }

    #[test]
    fn single_vertex_takes_one_round() {
        let (r, rounds) =
            dijkstra_dataparallel(&Graph::empty(1, false), 0, LaneConfig::per_vertex(1)).unwrap();
        assert_eq!(r.dist, vec![d(0)]);
        assert_eq!(rounds, 1);
    }

    #[test]
    fn unit_path_needs_one_round_per_hop_plus_one() {
        for n in 2..=10 {
            let text: String = std::iter::once(format!("{n} {}\n", n - 1))
                .chain((0..n - 1).map(|u| format!("{u} {} 1\n", u + 1)))
                .collect();
            let g = parse_edge_list(&text, true).unwrap();
            for lanes in [1, 3, n] {
                let cfg = LaneConfig {
                    lanes,
                    group_size: 2,
                };
                let (r, rounds) = dijkstra_dataparallel(&g, 0, cfg).unwrap();
                assert_eq!(r.dist, (0..n as u64).map(d).collect::<Vec<_>>());
                assert_eq!(rounds, n, "n={n} lanes={lanes}");
            }
        }
    }

    #[test]
    fn threaded_and_fuzzed_match_in_order() {
        let g = parse_edge_list(EXAMPLE_EDGES, false).unwrap();
        let base = dijkstra_dataparallel(&g, 2, LaneConfig::per_vertex(4))
            .unwrap()
            .0;
        for seed in 0..10 {
            let exec = LaneExecutor::new(LaneConfig {
                lanes: 4,
                group_size: 1,
            })
            .with_schedule(LaneSchedule::Fuzzed { seed })
            .with_threads(3);
            assert_eq!(run_dataparallel(&g, 2, &exec).unwrap().result, base);
        }
    }

    #[test]
    fn zero_weight_cycle_gets_acyclic_tree() {
        // 0 -1- 1 -0- 2 -0- 3 -0- 1
        let g = parse_edge_list("4 4\n0 1 1\n1 2 0\n2 3 0\n3 1 0\n", false).unwrap();
        let (r, _) = dijkstra_dataparallel(&g, 0, LaneConfig::per_vertex(4)).unwrap();
        assert_eq!(r.dist, vec![d(0), d(1), d(1), d(1)]);
        assert_eq!(r.pred, vec![None, Some(0), Some(1), Some(1)]);
    }

    #[test]
    fn transfers_count_cells_and_check_sizes() {
        let g = parse_edge_list(EXAMPLE_EDGES, false).unwrap();
        let dist = vec![Distance::INF; 4];
        let pred = vec![None; 4];
        let mut dev = DeviceBuffers::allocate(4);
        let s = transfer_in(g.matrix(), &dist, &pred, &mut dev).unwrap();
        assert_eq!((s.weight_cells, s.result_cells), (16, 8));
        assert_eq!(dev.adj, g.matrix());
        let (mut hd, mut hp) = (vec![d(1); 4], vec![Some(1); 4]);
        let s = transfer_out(&dev, &mut hd, &mut hp).unwrap();
        assert_eq!(s.result_cells, 8);
        assert_eq!(hd, dist);

        let mut empty = DeviceBuffers::allocate(0);
        let s = transfer_in(&[], &[], &[], &mut empty).unwrap();
        assert_eq!((s.weight_cells, s.bytes), (0, 0));

        let mut wrong = DeviceBuffers::allocate(3);
        assert!(matches!(
            transfer_in(g.matrix(), &dist, &pred, &mut wrong),
            Err(EngineError::SizeMismatch {
                buffer: "device matrix",
                ..
            })
        ));
    }

    #[test]
    fn errors() {
        let g = Graph::empty(2, false);
        assert!(matches!(
            dijkstra_dataparallel(&g, 2, LaneConfig::per_vertex(2)),
            Err(EngineError::SourceOutOfRange { .. })
        ));
        assert!(matches!(
            dijkstra_dataparallel(
                &g,
                0,
                LaneConfig {
                    lanes: 0,
                    group_size: 1
                }
            ),
            Err(EngineError::InvalidLanes { .. })
        ));
    }
}
