//! Simple graphs with dense vertex ids and path witnesses.
//!
//! Graphs are immutable once built: vertices are `0..n`, self-loops are
//! rejected, and duplicate edges collapse.  Undirected edges are stored
//! normalized as `(min, max)`.  Construction-style transforms
//! ([`Graph::induced_subgraph`], [`Graph::contract_pairs`]) return new
//! graphs plus the id mapping, never mutate in place.

use std::collections::HashSet;
use std::fmt;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),
    #[error("vertex {0} appears in more than one contraction pair")]
    OverlappingPairs(usize),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// First rule broken by a vertex sequence that fails path validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PathViolation {
    #[error("position {position}: vertex {vertex} out of range")]
    VertexOutOfRange { position: usize, vertex: usize },
    #[error("position {position}: vertex {vertex} repeated")]
    RepeatedVertex { position: usize, vertex: usize },
    #[error("position {position}: no edge between {from} and {to}")]
    MissingEdge { position: usize, from: usize, to: usize },
    #[error("position {position}: edge {from}->{to} exists only in the opposite direction")]
    WrongDirection { position: usize, from: usize, to: usize },
}

/// Exact degree summary: `avg_degree` is the rational `2m/n`, never a float,
/// so threshold comparisons downstream stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeStats {
    pub min_degree: usize,
    pub avg_degree: Ratio<u64>,
}

/// An immutable simple graph (directed or undirected) on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    directed: bool,
    /// Deduplicated edge list, sorted; undirected edges normalized (u < v).
    edges: Vec<(usize, usize)>,
    /// Out-neighbors (symmetric closure when undirected), each list sorted.
    adj: Vec<Vec<usize>>,
    /// In-degrees; only populated for directed graphs.
    indeg: Vec<usize>,
    edge_set: HashSet<(usize, usize)>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph {{ n: {}, directed: {}, m: {} }}",
            self.n,
            self.directed,
            self.edges.len()
        )
    }
}

impl Graph {
    /// Build a graph from an edge list.  Duplicate edges (and, for
    /// undirected graphs, reversed duplicates) collapse to one.
    pub fn new(
        n: usize,
        directed: bool,
        edge_list: &[(usize, usize)],
    ) -> Result<Graph, GraphError> {
        let mut set = HashSet::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            set.insert(normalize(directed, u, v));
        }
        let mut edges: Vec<_> = set.iter().copied().collect();
        edges.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        let mut indeg = vec![0usize; if directed { n } else { 0 }];
        for &(u, v) in &edges {
            adj[u].push(v);
            if directed {
                indeg[v] += 1;
            } else {
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            directed,
            edges,
            adj,
            indeg,
            edge_set: set,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Deduplicated, sorted edge list (normalized for undirected graphs).
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Out-neighbors of `v` in ascending id order (all neighbors when
    /// undirected).
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Whether the edge exists, honoring direction for directed graphs.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_set.contains(&normalize(self.directed, u, v))
    }

    /// Total degree: neighbor count for undirected, in+out for directed.
    pub fn total_degree(&self, v: usize) -> usize {
        if self.directed {
            self.adj[v].len() + self.indeg[v]
        } else {
            self.adj[v].len()
        }
    }

    /// Minimum total degree together with the exact average degree `2m/n`.
    ///
    /// # Panics
    ///
    /// Panics if the graph has no vertices.
    pub fn degree_stats(&self) -> DegreeStats {
        assert!(self.n > 0, "degree stats need at least one vertex");
        let min_degree = (0..self.n).map(|v| self.total_degree(v)).min().unwrap();
        DegreeStats {
            min_degree,
            avg_degree: Ratio::new(2 * self.edges.len() as u64, self.n as u64),
        }
    }

    /// Validate `path` as a simple path and return its length (edge count).
    ///
    /// The first violation in walk order is reported: at each position the
    /// vertex is checked for range, then the edge from its predecessor, then
    /// vertex repetition.  Empty and single-vertex witnesses are valid paths
    /// of length 0.
    pub fn validate_path(&self, path: &PathWitness) -> Result<usize, PathViolation> {
        let vs = &path.vertices;
        let mut seen = HashSet::with_capacity(vs.len());
        for (i, &v) in vs.iter().enumerate() {
            if v >= self.n {
                return Err(PathViolation::VertexOutOfRange {
                    position: i,
                    vertex: v,
                });
            }
            if i > 0 {
                let u = vs[i - 1];
                if !self.has_edge(u, v) {
                    return Err(if self.directed && self.has_edge(v, u) {
                        PathViolation::WrongDirection {
                            position: i,
                            from: u,
                            to: v,
                        }
                    } else {
                        PathViolation::MissingEdge {
                            position: i,
                            from: u,
                            to: v,
                        }
                    });
                }
            }
            if !seen.insert(v) {
                return Err(PathViolation::RepeatedVertex {
                    position: i,
                    vertex: v,
                });
            }
        }
        Ok(vs.len().saturating_sub(1))
    }

    /// Subgraph induced by the vertex set `keep` (duplicates ignored),
    /// relabeled to dense ids.  Returns the graph and the mapping
    /// `new id -> old id` in ascending old-id order.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        let mut kept: Vec<usize> = Vec::new();
        let mut in_keep = vec![false; self.n];
        for &v in keep {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
            if !in_keep[v] {
                in_keep[v] = true;
                kept.push(v);
            }
        }
        kept.sort_unstable();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in kept.iter().enumerate() {
            new_id[v] = i;
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(u, v)| in_keep[u] && in_keep[v])
            .map(|&(u, v)| (new_id[u], new_id[v]))
            .collect();
        let g = Graph::new(kept.len(), self.directed, &edges)?;
        Ok((g, kept))
    }

    /// Contract each pair into a single vertex (pairs must be disjoint).
    ///
    /// Parallel edges created by a contraction collapse, self-loops are
    /// dropped, and edge direction is preserved.  Returns the contracted
    /// graph and the mapping `old id -> new id`.
    pub fn contract_pairs(
        &self,
        pairs: &[(usize, usize)],
    ) -> Result<(Graph, Vec<usize>), GraphError> {
        let mut rep: Vec<usize> = (0..self.n).collect();
        let mut used = vec![false; self.n];
        for &(a, b) in pairs {
            for w in [a, b] {
                if w >= self.n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
                }
                if used[w] {
                    return Err(GraphError::OverlappingPairs(w));
                }
                used[w] = true;
            }
            if a == b {
                return Err(GraphError::OverlappingPairs(a));
            }
            let r = a.min(b);
            rep[a] = r;
            rep[b] = r;
        }
        // Dense relabeling in ascending representative order.
        let mut reps: Vec<usize> = (0..self.n).filter(|&v| rep[v] == v).collect();
        reps.sort_unstable();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &r) in reps.iter().enumerate() {
            new_id[r] = i;
        }
        let mapping: Vec<usize> = (0..self.n).map(|v| new_id[rep[v]]).collect();
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| (mapping[u], mapping[v]))
            .filter(|&(u, v)| u != v)
            .collect();
        let g = Graph::new(reps.len(), self.directed, &edges)?;
        Ok((g, mapping))
    }

    /// Write the edge-list text format: a `# graph directed=<0|1> n=<n>`
    /// header followed by one `u v` line per edge.
    pub fn write_to(&self, w: &mut impl Write) -> std::io::Result<()> {
        writeln!(
            w,
            "# graph directed={} n={}",
            if self.directed { 1 } else { 0 },
            self.n
        )?;
        for &(u, v) in &self.edges {
            writeln!(w, "{} {}", u, v)?;
        }
        Ok(())
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> std::io::Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_to(&mut f)
    }

    /// Parse the edge-list text format; parse failures carry the 1-based
    /// line number.
    pub fn read_from(r: impl std::io::Read) -> Result<Graph, GraphError> {
        let reader = BufReader::new(r);
        let mut header: Option<(bool, usize)> = None;
        let mut edges = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            if t.starts_with('#') {
                if header.is_none() {
                    header = Some(parse_graph_header(t, lineno)?);
                }
                continue;
            }
            let (u, v) = parse_edge_line(t, lineno)?;
            edges.push((u, v));
        }
        let (directed, n) = header.ok_or_else(|| GraphError::Parse {
            line: 1,
            reason: "missing `# graph directed=<0|1> n=<n>` header".into(),
        })?;
        Graph::new(n, directed, &edges)
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Graph, GraphError> {
        Graph::read_from(std::fs::File::open(path)?)
    }
}

#[inline]
fn normalize(directed: bool, u: usize, v: usize) -> (usize, usize) {
    if directed || u < v {
        (u, v)
    } else {
        (v, u)
    }
}

fn parse_graph_header(line: &str, lineno: usize) -> Result<(bool, usize), GraphError> {
    let err = |reason: &str| GraphError::Parse {
        line: lineno,
        reason: reason.to_string(),
    };
    let rest = line
        .trim_start_matches('#')
        .trim()
        .strip_prefix("graph")
        .ok_or_else(|| err("header must start with `# graph`"))?;
    let mut directed = None;
    let mut n = None;
    for field in rest.split_whitespace() {
        match field.split_once('=') {
            Some(("directed", val)) => {
                directed = Some(match val {
                    "0" => false,
                    "1" => true,
                    _ => return Err(err("directed must be 0 or 1")),
                })
            }
            Some(("n", val)) => {
                n = Some(val.parse::<usize>().map_err(|_| err("bad n value"))?)
            }
            _ => return Err(err("unknown header field")),
        }
    }
    match (directed, n) {
        (Some(d), Some(n)) => Ok((d, n)),
        _ => Err(err("header needs directed= and n=")),
    }
}

fn parse_edge_line(line: &str, lineno: usize) -> Result<(usize, usize), GraphError> {
    let mut it = line.split_whitespace();
    let parse = |tok: Option<&str>| -> Result<usize, GraphError> {
        tok.ok_or(())
            .and_then(|t| t.parse::<usize>().map_err(|_| ()))
            .map_err(|_| GraphError::Parse {
                line: lineno,
                reason: format!("expected `u v`, got `{line}`"),
            })
    };
    let u = parse(it.next())?;
    let v = parse(it.next())?;
    if it.next().is_some() {
        return Err(GraphError::Parse {
            line: lineno,
            reason: format!("trailing tokens in `{line}`"),
        });
    }
    Ok((u, v))
}

/// A candidate simple path, stored as its vertex sequence.
///
/// The length of a path is its edge count: `vertices.len() - 1`, or 0 for
/// the empty witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathWitness {
    pub vertices: Vec<usize>,
}

impl PathWitness {
    pub fn new(vertices: Vec<usize>) -> Self {
        PathWitness { vertices }
    }

    pub fn empty() -> Self {
        PathWitness { vertices: Vec::new() }
    }

    /// Edge count.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive vertex pairs.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    /// Serialize as a single line of space-separated vertex ids.
    pub fn write_to(&self, w: &mut impl Write) -> std::io::Result<()> {
        let line: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        writeln!(w, "{}", line.join(" "))
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> std::io::Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_to(&mut f)
    }

    /// Parse the one-line format.  An empty (or blank) line is the empty
    /// witness.
    pub fn read_from(r: impl std::io::Read) -> Result<PathWitness, GraphError> {
        let mut text = String::new();
        BufReader::new(r).read_to_string(&mut text)?;
        let line = text.lines().next().unwrap_or("");
        let mut vertices = Vec::new();
        for tok in line.split_whitespace() {
            vertices.push(tok.parse::<usize>().map_err(|_| GraphError::Parse {
                line: 1,
                reason: format!("bad vertex id `{tok}`"),
            })?);
        }
        Ok(PathWitness { vertices })
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<PathWitness, GraphError> {
        PathWitness::read_from(std::fs::File::open(path)?)
    }
}
