//! Dense adjacency-matrix graphs and the edge-list text format.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::weight::Weight;

/// One weighted edge `u -> v` (or `u -- v` for undirected fills).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: Weight,
}

/// Vertex count plus an unordered edge multiset, as read from or written to disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: missing `<n> <m>` header")]
    MissingHeader { line: usize },
    #[error("line {line}: expected {expected} integer fields, found `{text}`")]
    Malformed {
        line: usize,
        expected: usize,
        text: String,
    },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("line {line}: negative edge weight {weight}")]
    NegativeWeight { line: usize, weight: i64 },
    #[error("line {line}: edge weight {weight} exceeds maximum {max}")]
    WeightTooLarge { line: usize, weight: i64, max: u32 },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCountMismatch { declared: usize, found: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("matrix has {cells} cells, expected {n}x{n}")]
    Shape { n: usize, cells: usize },
    #[error("diagonal entry ({v},{v}) is {w}, expected 0")]
    NonZeroDiagonal { v: usize, w: Weight },
    #[error("undirected graph is not symmetric at ({u},{v})")]
    Asymmetric { u: usize, v: usize },
    #[error("edge ({u},{v}) is invalid for a graph with {n} vertices")]
    InvalidEdge { u: usize, v: usize, n: usize },
    #[error("cannot pad a graph of {n} vertices down to {padded_n}")]
    PadTooSmall { n: usize, padded_n: usize },
}

impl EdgeList {
    /// Reads the `<n> <m>` header followed by `m` lines of `<u> <v> <w>`.
    ///
    /// Blank lines and lines whose first non-blank character is `#` are
    /// skipped; CRLF endings are accepted. Line numbers in errors are 1-based
    /// physical lines.
    pub fn parse(text: &str) -> Result<EdgeList, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(ParseError::MissingHeader { line: 1 })?;
        let [n, m] = parse_fields::<2>(header_line, header)?;
        let (n, declared) = (to_index(header_line, n)?, to_index(header_line, m)?);

        let mut edges = Vec::with_capacity(declared.min(1 << 24));
        for (line, text) in lines {
            let [u, v, w] = parse_fields::<3>(line, text)?;
            let u = to_vertex(line, u, n)?;
            let v = to_vertex(line, v, n)?;
            if u == v {
                return Err(ParseError::SelfLoop { line, vertex: u });
            }
            if w < 0 {
                return Err(ParseError::NegativeWeight { line, weight: w });
            }
            let w =
                u32::try_from(w)
                    .ok()
                    .and_then(Weight::new)
                    .ok_or(ParseError::WeightTooLarge {
                        line,
                        weight: w,
                        max: Weight::MAX_FINITE,
                    })?;
            edges.push(Edge { u, v, w });
        }
        if edges.len() != declared {
            return Err(ParseError::EdgeCountMismatch {
                declared,
                found: edges.len(),
            });
        }
        Ok(EdgeList { n, edges })
    }

    /// Canonical text form: header then one edge per line, in list order.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 + self.edges.len() * 12);
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e.u, e.v, e.w);
        }
        out
    }
}

fn parse_fields<const K: usize>(line: usize, text: &str) -> Result<[i64; K], ParseError> {
    let malformed = || ParseError::Malformed {
        line,
        expected: K,
        text: text.to_owned(),
    };
    let mut out = [0i64; K];
    let mut fields = text.split_whitespace();
    for slot in &mut out {
        *slot = fields
            .next()
            .and_then(|f| f.parse().ok())
            .ok_or_else(malformed)?;
    }
    if fields.next().is_some() {
        return Err(malformed());
    }
    Ok(out)
}

fn to_index(line: usize, value: i64) -> Result<usize, ParseError> {
    usize::try_from(value).map_err(|_| ParseError::Malformed {
        line,
        expected: 2,
        text: value.to_string(),
    })
}

fn to_vertex(line: usize, value: i64, n: usize) -> Result<usize, ParseError> {
    match usize::try_from(value) {
        Ok(v) if v < n => Ok(v),
        _ => Err(ParseError::VertexOutOfRange {
            line,
            vertex: value.max(0) as usize,
            n,
        }),
    }
}

/// Row-major `n x n` adjacency matrix. Row `u`, column `v` holds the weight of
/// `u -> v`; the diagonal is zero and missing edges are [`Weight::INF`].
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    directed: bool,
    adj: Vec<Weight>,
}

impl Graph {
    /// An edgeless graph.
    pub fn empty(n: usize, directed: bool) -> Graph {
        let mut adj = vec![Weight::INF; n * n];
        for v in 0..n {
            adj[v * n + v] = Weight::ZERO;
        }
        Graph { n, directed, adj }
    }

    /// Fills the matrix from `list`. Undirected fills write both `(u,v)` and
    /// `(v,u)`. Repeated edges keep the smallest weight.
    pub fn from_edge_list(list: &EdgeList, directed: bool) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(list.n, directed);
        for e in &list.edges {
            g.insert_edge(*e)?;
        }
        Ok(g)
    }

    /// Wraps an existing row-major matrix after checking every graph invariant.
    pub fn from_matrix(n: usize, directed: bool, adj: Vec<Weight>) -> Result<Graph, GraphError> {
        if adj.len() != n * n {
            return Err(GraphError::Shape {
                n,
                cells: adj.len(),
            });
        }
        for v in 0..n {
            let w = adj[v * n + v];
            if w != Weight::ZERO {
                return Err(GraphError::NonZeroDiagonal { v, w });
            }
        }
        if !directed {
            for u in 0..n {
                for v in (u + 1)..n {
                    if adj[u * n + v] != adj[v * n + u] {
                        return Err(GraphError::Asymmetric { u, v });
                    }
                }
            }
        }
        Ok(Graph { n, directed, adj })
    }

    fn insert_edge(&mut self, e: Edge) -> Result<(), GraphError> {
        let n = self.n;
        if e.u >= n || e.v >= n || e.u == e.v || !e.w.is_finite() {
            return Err(GraphError::InvalidEdge { u: e.u, v: e.v, n });
        }
        let cell = &mut self.adj[e.u * n + e.v];
        *cell = (*cell).min(e.w);
        if !self.directed {
            let cell = &mut self.adj[e.v * n + e.u];
            *cell = (*cell).min(e.w);
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_directed(&self) -> bool {
        self.directed
    }

    #[inline]
    pub fn weight(&self, u: usize, v: usize) -> Weight {
        self.adj[u * self.n + v]
    }

    /// Outgoing weights of `u`, indexed by target vertex.
    #[inline]
    pub fn row(&self, u: usize) -> &[Weight] {
        &self.adj[u * self.n..(u + 1) * self.n]
    }

    #[inline]
    pub fn matrix(&self) -> &[Weight] {
        &self.adj
    }

    /// Number of finite off-diagonal cells (each undirected edge counts twice).
    pub fn finite_off_diagonal(&self) -> usize {
        (0..self.n)
            .map(|u| {
                self.row(u)
                    .iter()
                    .enumerate()
                    .filter(|&(v, w)| v != u && w.is_finite())
                    .count()
            })
            .sum()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Graph(n={}, directed={})", self.n, self.directed)?;
        for u in 0..self.n.min(16) {
            let row: Vec<String> = self.row(u).iter().take(16).map(Weight::to_string).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Parses edge-list text and fills an adjacency matrix in one step.
pub fn parse_edge_list(text: &str, directed: bool) -> Result<Graph, ParseError> {
    let list = EdgeList::parse(text)?;
    // Every edge was range- and loop-checked by the parser.
    Ok(Graph::from_edge_list(&list, directed).expect("parser validated edges"))
}
