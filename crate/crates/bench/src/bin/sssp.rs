use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sssp_bench::timing::{engine_for, time_engine, GraphId};
use sssp_bench::{run_suite, scaling_path, BenchConfig, BenchError};
use sssp_core::dataparallel::DEFAULT_GROUP_SIZE;
use sssp_core::{EdgeList, EngineKind, Graph, GraphKind};

const SHOWN: usize = 10;

#[derive(Parser)]
#[command(
    name = "sssp",
    about = "Single-source shortest paths: run, generate, benchmark"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one graph with one engine and print distances and timings.
    Run {
        #[arg(long)]
        engine: EngineKind,
        #[arg(long)]
        graph: PathBuf,
        /// Treat edges as directed `u -> v`.
        #[arg(short = 'w', long = "directed")]
        directed: bool,
        #[arg(long, default_value_t = 0)]
        source: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        /// Data-parallel lanes; one per vertex when omitted.
        #[arg(long)]
        lanes: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_GROUP_SIZE)]
        group_size: usize,
        /// Print every vertex's distance instead of the first few.
        #[arg(long)]
        all: bool,
    },
    /// Write a seeded random graph as an edge list.
    Gen {
        #[arg(long)]
        kind: GraphKind,
        #[arg(long)]
        nodes: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the grid described by a config file and write CSV reports.
    Bench {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn io_err(path: &std::path::Path) -> impl FnOnce(std::io::Error) -> BenchError + '_ {
    move |error| BenchError::Io {
        path: path.to_path_buf(),
        error,
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(command: Command) -> Result<(), BenchError> {
    match command {
        Command::Run {
            engine,
            graph,
            directed,
            source,
            workers,
            reps,
            lanes,
            group_size,
            all,
        } => {
            if workers == 0 {
                return Err(BenchError::InvalidWorkers);
            }
            let text = std::fs::read_to_string(&graph).map_err(io_err(&graph))?;
            let list = EdgeList::parse(&text).map_err(|error| BenchError::GraphFile {
                path: graph.clone(),
                error,
            })?;
            let g = Graph::from_edge_list(&list, directed)?;
            let id = GraphId {
                label: graph.display().to_string(),
                n: list.n,
                m: list.edges.len(),
            };
            let eng = engine_for(engine, workers, lanes, group_size);
            let timed = time_engine(eng.as_ref(), &g, &id, source, reps, None)?;
            let rec = &timed.record;
            println!(
                "engine {} on {} (n={}, m={}), source {}, parallelism {}",
                rec.engine, id.label, id.n, id.m, source, rec.workers
            );
            let dist = &timed.result.dist;
            let reachable: Vec<u64> = dist.iter().filter_map(|d| d.get()).collect();
            println!(
                "reachable {} of {}, farthest {}",
                reachable.len(),
                dist.len(),
                reachable.iter().max().copied().unwrap_or(0)
            );
            let shown = if all {
                dist.len()
            } else {
                dist.len().min(SHOWN)
            };
            for (v, d) in dist.iter().enumerate().take(shown) {
                println!("{v}\t{d}");
            }
            if shown < dist.len() {
                println!("... {} more (use --all)", dist.len() - shown);
            }
            for (p, s) in &rec.phases {
                println!("phase {:<13} {s:.9} s", p.as_str());
            }
            println!("total {:.9} s (best of {reps})", rec.total_s);
            println!("relax_checks {}", rec.counters.relax_checks);
            if let Some(c) = rec.counters.allreduce_count {
                println!("allreduce_count {c}");
            }
            if let Some(r) = rec.counters.rounds {
                println!("rounds {r}");
            }
            Ok(())
        }
        Command::Gen {
            kind,
            nodes,
            seed,
            out,
        } => {
            let list = kind.generate(nodes, seed)?;
            std::fs::write(&out, list.to_text()).map_err(io_err(&out))?;
            println!(
                "wrote {} graph n={} m={} to {}",
                kind.as_str(),
                list.n,
                list.edges.len(),
                out.display()
            );
            Ok(())
        }
        Command::Bench { config, out } => {
            let cfg = BenchConfig::load(&config)?;
            let report = run_suite(&cfg)?;
            report.write(&out)?;
            print!("{}", report.summary());
            println!(
                "\nwrote {} and {}",
                out.display(),
                scaling_path(&out).display()
            );
            Ok(())
        }
    }
}
