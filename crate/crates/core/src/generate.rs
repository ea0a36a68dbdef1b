//! Random graph families used by the experiments and the command line.
//!
//! Three undirected families cover the needs of the harness: Erdős–Rényi
//! [`gnp`] for average-degree experiments, approximately regular graphs via
//! the pairing model ([`random_regular`]), and [`planted_path`] instances
//! whose longest path is known by construction.

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::graph::Graph;
use crate::rng;

/// Invalid generator parameters.
#[derive(Debug, Error)]
pub enum GenError {
    #[error("edge probability {p} is not in [0, 1]")]
    InvalidProbability { p: f64 },
    #[error("a {d}-regular graph on {n} vertices needs d < n and n*d even")]
    InfeasibleDegree { n: usize, d: usize },
    #[error("{m} edges cannot contain a spanning path of {n} vertices")]
    TooFewEdges { n: usize, m: usize },
    #[error("{m} edges exceed the {max} distinct pairs on {n} vertices")]
    TooManyEdges { n: usize, m: usize, max: usize },
}

/// Erdős–Rényi graph: each of the `n(n-1)/2` pairs is an edge
/// independently with probability `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::InvalidProbability { p });
    }
    let mut rng = rng::component_rng(seed, "gnp", 0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::new(n, false, &edges).expect("in-range simple edges"))
}

/// Approximately `d`-regular graph from the pairing model: each vertex
/// gets `d` stubs, a uniform perfect matching on the stubs proposes the
/// edges, and self-loops and duplicates are dropped.  Almost all vertices
/// keep degree exactly `d`; the erasures leave a small deficit rather than
/// introducing bias toward any vertex.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GenError> {
    if d >= n || !(n * d).is_multiple_of(2) {
        return Err(GenError::InfeasibleDegree { n, d });
    }
    let mut rng = rng::component_rng(seed, "regular", 0);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    stubs.shuffle(&mut rng);
    let mut edges = Vec::new();
    for pair in stubs.chunks_exact(2) {
        if pair[0] != pair[1] {
            edges.push((pair[0], pair[1]));
        }
    }
    Ok(Graph::new(n, false, &edges).expect("loop-free in-range edges"))
}

/// Graph with a known spanning path: the path `0-1-...-(n-1)` plus
/// `m - (n-1)` further distinct random edges.  Its longest path has
/// exactly `n - 1` edges, whatever the extras are.
pub fn planted_path(n: usize, m: usize, seed: u64) -> Result<Graph, GenError> {
    let max = n * n.saturating_sub(1) / 2;
    if n > 0 && m + 1 < n {
        return Err(GenError::TooFewEdges { n, m });
    }
    if m > max {
        return Err(GenError::TooManyEdges { n, m, max });
    }
    let mut rng = rng::component_rng(seed, "planted", 0);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
    let mut present: std::collections::HashSet<(usize, usize)> = edges.iter().copied().collect();
    while edges.len() < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u == v {
            continue;
        }
        let e = (u.min(v), u.max(v));
        if present.insert(e) {
            edges.push(e);
        }
    }
    Ok(Graph::new(n, false, &edges).expect("in-range simple edges"))
}
