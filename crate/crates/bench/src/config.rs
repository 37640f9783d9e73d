//! Suite configuration.
//!
//! One `key = value` pair per line; `#` starts a comment. List values are
//! comma separated.
//!
//! ```text
//! engines    = serial, partitioned, dataparallel
//! workers    = 1, 2, 4
//! graphs     = sparse:1000, dense:200, file:graphs/road.txt
//! seeds      = 1, 2
//! source     = 0
//! reps       = 3
//! directed   = false
//! lanes      = n
//! group_size = 32
//! ```
//!
//! `engines` and `graphs` are required. Generated graphs run once per seed;
//! file graphs run once. `lanes = n` gives one lane per vertex.

use std::path::{Path, PathBuf};

use sssp_core::{EngineKind, GraphKind};

use crate::BenchError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphSpec {
    Generated { kind: GraphKind, n: usize },
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub engines: Vec<EngineKind>,
    /// Worker counts for the partitioned engine.
    pub workers: Vec<usize>,
    pub graphs: Vec<GraphSpec>,
    pub seeds: Vec<u64>,
    pub source: usize,
    pub reps: usize,
    pub directed: bool,
    /// `None` means one lane per vertex.
    pub lanes: Option<usize>,
    pub group_size: usize,
}

impl Default for BenchConfig {
    fn default() -> BenchConfig {
        BenchConfig {
            engines: Vec::new(),
            workers: vec![1],
            graphs: Vec::new(),
            seeds: vec![1],
            source: 0,
            reps: 3,
            directed: false,
            lanes: None,
            group_size: sssp_core::dataparallel::DEFAULT_GROUP_SIZE,
        }
    }
}

fn list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn positive(line: usize, key: &str, value: &str) -> Result<usize, BenchError> {
    match value.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(BenchError::Config {
            line,
            message: format!("{key}: expected a positive integer, found `{value}`"),
        }),
    }
}

impl BenchConfig {
    /// File paths in `graphs` are resolved against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<BenchConfig, BenchError> {
        let mut cfg = BenchConfig::default();
        let mut saw_engines = false;
        let mut saw_graphs = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| BenchError::Config { line, message };
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, found `{content}`")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "engines" => {
                    saw_engines = true;
                    cfg.engines = list(value)
                        .map(|s| s.parse().map_err(err))
                        .collect::<Result<_, _>>()?;
                }
                "workers" => {
                    cfg.workers = list(value)
                        .map(|s| positive(line, key, s))
                        .collect::<Result<_, _>>()?;
                    if cfg.workers.is_empty() {
                        return Err(err("workers: list is empty".into()));
                    }
                }
                "graphs" => {
                    saw_graphs = true;
                    cfg.graphs = list(value)
                        .map(|s| parse_graph(s, base).map_err(err))
                        .collect::<Result<_, _>>()?;
                }
                "seeds" | "seed" => {
                    cfg.seeds = list(value)
                        .map(|s| s.parse().map_err(|_| err(format!("{key}: bad seed `{s}`"))))
                        .collect::<Result<_, _>>()?;
                    if cfg.seeds.is_empty() {
                        return Err(err(format!("{key}: list is empty")));
                    }
                }
                "source" => {
                    cfg.source = value.parse().map_err(|_| {
                        err(format!("source: expected a vertex id, found `{value}`"))
                    })?
                }
                "reps" => cfg.reps = positive(line, key, value)?,
                "directed" => {
                    cfg.directed = value.parse().map_err(|_| {
                        err(format!("directed: expected true or false, found `{value}`"))
                    })?
                }
                "lanes" => {
                    cfg.lanes = if value == "n" {
                        None
                    } else {
                        Some(positive(line, key, value)?)
                    }
                }
                "group_size" => cfg.group_size = positive(line, key, value)?,
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        if !saw_engines || !saw_graphs || cfg.engines.is_empty() || cfg.graphs.is_empty() {
            return Err(BenchError::NothingToRun);
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<BenchConfig, BenchError> {
        let text = std::fs::read_to_string(path).map_err(|error| BenchError::Io {
            path: path.to_path_buf(),
            error,
        })?;
        BenchConfig::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }
}

fn parse_graph(s: &str, base: &Path) -> Result<GraphSpec, String> {
    let (tag, arg) = s.split_once(':').ok_or_else(|| {
        format!("graph `{s}`: expected `dense:<n>`, `sparse:<n>` or `file:<path>`")
    })?;
    if tag == "file" {
        return Ok(GraphSpec::File(base.join(arg.trim())));
    }
    let kind: GraphKind = tag.parse()?;
    let n = arg
        .trim()
        .parse()
        .map_err(|_| format!("graph `{s}`: bad vertex count `{arg}`"))?;
    Ok(GraphSpec::Generated { kind, n })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_config() {
        let text = "\
# comment
engines = serial, partitioned ,dataparallel
workers = 1,2,4   # trailing comment
graphs = sparse:100, dense:50, file:g.txt
seeds = 3, 4
source = 2
reps = 5
directed = true
lanes = 8
group_size = 4
";
        let cfg = BenchConfig::parse(text, Path::new("/data")).unwrap();
        assert_eq!(cfg.engines, EngineKind::ALL);
        assert_eq!(cfg.workers, [1, 2, 4]);
        assert_eq!(
            cfg.graphs,
            [
                GraphSpec::Generated {
                    kind: GraphKind::Sparse,
                    n: 100
                },
                GraphSpec::Generated {
                    kind: GraphKind::Dense,
                    n: 50
                },
                GraphSpec::File(PathBuf::from("/data/g.txt")),
            ]
        );
        assert_eq!(cfg.seeds, [3, 4]);
        assert_eq!((cfg.source, cfg.reps, cfg.directed), (2, 5, true));
        assert_eq!((cfg.lanes, cfg.group_size), (Some(8), 4));
    }

    #[test]
    fn defaults() {
        let cfg = BenchConfig::parse(
            "engines = serial\ngraphs = sparse:10\nlanes = n\n",
            Path::new("."),
        )
        .unwrap();
        assert_eq!(cfg.workers, [1]);
        assert_eq!(cfg.seeds, [1]);
        assert_eq!(
            (cfg.source, cfg.reps, cfg.directed, cfg.lanes),
            (0, 3, false, None)
        );
    }

    #[test]
    fn nothing_to_run() {
        for text in [
            "graphs = sparse:10",
            "engines = serial",
            "engines =\ngraphs = sparse:10",
            "",
        ] {
            assert!(
                matches!(
                    BenchConfig::parse(text, Path::new(".")),
                    Err(BenchError::NothingToRun)
                ),
                "{text}"
            );
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("engines = serial\nbogus = 1", 2),
            ("engines = gpu", 1),
            ("\n\nworkers = 0", 3),
            ("graphs = huge:10", 1),
            ("graphs = sparse:ten", 1),
            ("reps = -1", 1),
            ("directed = maybe", 1),
            ("no equals sign", 1),
        ];
        for (text, want) in cases {
            match BenchConfig::parse(text, Path::new(".")) {
                Err(BenchError::Config { line, .. }) => assert_eq!(line, want, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }
}
