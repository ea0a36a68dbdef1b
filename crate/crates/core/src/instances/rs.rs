//! Bipartite graphs whose edge set splits into induced matchings.
//!
//! A matching is *induced* when the subgraph spanned by its endpoints
//! contains no further edges; a graph partitioned into `t` induced matchings
//! of common size `r` is the raw material of every planted-matching
//! construction in this crate.  Verification is by direct re-derivation:
//! partition, matching property, and induced-ness are each checked against
//! the graph itself.

use std::collections::HashSet;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

/// Why a proposed decomposition is not a valid induced-matching partition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RsViolation {
    #[error("graph is not bipartite (vertex {vertex} closes an odd cycle)")]
    NotBipartite { vertex: usize },
    #[error("matching {index} is empty")]
    EmptyMatching { index: usize },
    #[error("matching {index} has size {size}, expected {expected}")]
    UnequalSizes {
        index: usize,
        size: usize,
        expected: usize,
    },
    #[error("matching {index} repeats vertex {vertex}")]
    NotAMatching { index: usize, vertex: usize },
    #[error("matching {index} lists edge ({u}, {v}) absent from the graph")]
    EdgeNotInGraph { index: usize, u: usize, v: usize },
    #[error("edge ({u}, {v}) appears in more than one matching")]
    DuplicateEdge { u: usize, v: usize },
    #[error("graph edge ({u}, {v}) is not covered by any matching")]
    NotAPartition { u: usize, v: usize },
    #[error("matching {index} is not induced: edge ({u}, {v}) joins its vertices")]
    NotInduced { index: usize, u: usize, v: usize },
}

/// Check that `matchings` partitions the edges of `g` into equal-size
/// induced matchings; returns `(r, t)` on success.
pub fn verify_rs_decomposition(
    g: &Graph,
    matchings: &[Vec<(usize, usize)>],
) -> Result<(usize, usize), RsViolation> {
    bipartite_check(g)?;
    if matchings.is_empty() {
        return if g.m() == 0 {
            Ok((0, 0))
        } else {
            let &(u, v) = &g.edges()[0];
            Err(RsViolation::NotAPartition { u, v })
        };
    }
    let r = matchings[0].len();
    let mut seen_edges: HashSet<(usize, usize)> = HashSet::new();
    for (index, m) in matchings.iter().enumerate() {
        if m.is_empty() {
            return Err(RsViolation::EmptyMatching { index });
        }
        if m.len() != r {
            return Err(RsViolation::UnequalSizes {
                index,
                size: m.len(),
                expected: r,
            });
        }
        let mut touched: HashSet<usize> = HashSet::new();
        for &(a, b) in m {
            let (u, v) = canon(g, a, b);
            if !g.has_edge(a, b) {
                return Err(RsViolation::EdgeNotInGraph { index, u, v });
            }
            if !seen_edges.insert((u, v)) {
                return Err(RsViolation::DuplicateEdge { u, v });
            }
            for w in [u, v] {
                if !touched.insert(w) {
                    return Err(RsViolation::NotAMatching { index, vertex: w });
                }
            }
        }
        // Induced-ness: the subgraph spanned by the matched vertices must
        // contain exactly the matching edges.
        let mut verts: Vec<usize> = touched.into_iter().collect();
        verts.sort_unstable();
        let (sub, mapping) = g
            .induced_subgraph(&verts)
            .expect("matched vertices are in range");
        if sub.m() != r {
            let mine: HashSet<(usize, usize)> =
                m.iter().map(|&(a, b)| canon(g, a, b)).collect();
            let &(a, b) = sub
                .edges()
                .iter()
                .find(|&&(a, b)| !mine.contains(&canon(g, mapping[a], mapping[b])))
                .expect("an edge count mismatch implies an extra edge");
            let (u, v) = canon(g, mapping[a], mapping[b]);
            return Err(RsViolation::NotInduced { index, u, v });
        }
    }
    if seen_edges.len() != g.m() {
        let &(u, v) = g
            .edges()
            .iter()
            .find(|e| !seen_edges.contains(e))
            .expect("a count mismatch implies an uncovered edge");
        return Err(RsViolation::NotAPartition { u, v });
    }
    Ok((r, matchings.len()))
}

fn canon(g: &Graph, u: usize, v: usize) -> (usize, usize) {
    if !g.is_directed() && u > v {
        (v, u)
    } else {
        (u, v)
    }
}

/// 2-color the underlying undirected structure.
fn bipartite_check(g: &Graph) -> Result<(), RsViolation> {
    let n = g.n();
    let mut color = vec![None::<bool>; n];
    // Symmetric adjacency regardless of orientation.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    for s in 0..n {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut queue = vec![s];
        while let Some(u) = queue.pop() {
            let cu = color[u].unwrap();
            for &w in &adj[u] {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        queue.push(w);
                    }
                    Some(cw) if cw == cu => {
                        return Err(RsViolation::NotBipartite { vertex: w });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(())
}

/// An undirected bipartite graph with sides `[0, side)` and `[side, 2·side)`
/// and a verified partition of its edges into induced matchings.  Matchings
/// are stored with normalized edges sorted by their A-endpoint, which fixes
/// the meaning of "the j-th edge of matching i".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsGraph {
    pub graph: Graph,
    pub side: usize,
    pub matchings: Vec<Vec<(usize, usize)>>,
}

impl RsGraph {
    /// Build from per-matching edge lists over sides `[0, side)` and
    /// `[side, 2·side)`, verifying the full decomposition.
    pub fn new(
        side: usize,
        matchings: Vec<Vec<(usize, usize)>>,
    ) -> Result<RsGraph, RsViolation> {
        let mut normalized: Vec<Vec<(usize, usize)>> = Vec::with_capacity(matchings.len());
        for (index, m) in matchings.iter().enumerate() {
            let mut edges = Vec::with_capacity(m.len());
            for &(a, b) in m {
                let (u, v) = if a < b { (a, b) } else { (b, a) };
                if u >= side || v < side || v >= 2 * side {
                    return Err(RsViolation::EdgeNotInGraph { index, u, v });
                }
                edges.push((u, v));
            }
            edges.sort_unstable();
            normalized.push(edges);
        }
        let all: Vec<(usize, usize)> = normalized.iter().flatten().copied().collect();
        // Side bounds above rule out range errors and self-loops; duplicate
        // edges are deduplicated by the graph and caught by the verifier.
        let graph =
            Graph::new(2 * side, false, &all).expect("side-checked edges are valid");
        verify_rs_decomposition(&graph, &normalized)?;
        Ok(RsGraph {
            graph,
            side,
            matchings: normalized,
        })
    }

    /// Size of each matching.
    pub fn r(&self) -> usize {
        self.matchings.first().map_or(0, Vec::len)
    }

    /// Number of matchings.
    pub fn t(&self) -> usize {
        self.matchings.len()
    }

    /// Re-run the full decomposition check.
    pub fn verify(&self) -> Result<(usize, usize), RsViolation> {
        verify_rs_decomposition(&self.graph, &self.matchings)
    }

    /// Write as text: a header, then one `# matching i` block per matching.
    pub fn write_to(&self, w: &mut impl Write) -> std::io::Result<()> {
        writeln!(w, "# rs side={} r={} t={}", self.side, self.r(), self.t())?;
        for (i, m) in self.matchings.iter().enumerate() {
            writeln!(w, "# matching {i}")?;
            for &(u, v) in m {
                writeln!(w, "{u} {v}")?;
            }
        }
        Ok(())
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> std::io::Result<()> {
        let mut f = std::fs::File::create(path)?;
        self.write_to(&mut f)
    }

    pub fn read_from(r: impl std::io::Read) -> Result<RsGraph, GraphError> {
        let reader = BufReader::new(r);
        let mut side: Option<usize> = None;
        let mut matchings: Vec<Vec<(usize, usize)>> = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| GraphError::Parse {
                line: lineno + 1,
                reason: e.to_string(),
            })?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("# rs ") {
                for field in rest.split_whitespace() {
                    if let Some(v) = field.strip_prefix("side=") {
                        side = Some(v.parse().map_err(|_| GraphError::Parse {
                            line: lineno + 1,
                            reason: format!("bad side {v:?}"),
                        })?);
                    }
                }
                continue;
            }
            if line.strip_prefix("# matching ").is_some() {
                matchings.push(Vec::new());
                continue;
            }
            if line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let (u, v) = match (it.next(), it.next(), it.next()) {
                (Some(u), Some(v), None) => {
                    let parse = |tok: &str| {
                        tok.parse::<usize>().map_err(|_| GraphError::Parse {
                            line: lineno + 1,
                            reason: format!("bad vertex {tok:?}"),
                        })
                    };
                    (parse(u)?, parse(v)?)
                }
                _ => {
                    return Err(GraphError::Parse {
                        line: lineno + 1,
                        reason: "expected two vertex ids".into(),
                    })
                }
            };
            match matchings.last_mut() {
                Some(m) => m.push((u, v)),
                None => {
                    return Err(GraphError::Parse {
                        line: lineno + 1,
                        reason: "edge before any '# matching' marker".into(),
                    })
                }
            }
        }
        let side = side.ok_or(GraphError::Parse {
            line: 0,
            reason: "missing '# rs side=…' header".into(),
        })?;
        RsGraph::new(side, matchings).map_err(|v| GraphError::Parse {
            line: 0,
            reason: v.to_string(),
        })
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<RsGraph, GraphError> {
        let f = std::fs::File::open(&path).map_err(|e| GraphError::Parse {
            line: 0,
            reason: e.to_string(),
        })?;
        RsGraph::read_from(f)
    }
}

/// The trivial one-matching family: `A_i — B_i` for `i < r` (any matching
/// is induced when it is the whole edge set).
pub fn rs_matching(side: usize, r: usize) -> Result<RsGraph, RsViolation> {
    let m: Vec<(usize, usize)> = (0..r.min(side)).map(|i| (i, side + i)).collect();
    RsGraph::new(side, vec![m])
}

/// Brute-force search for a partition of `g` into induced matchings of size
/// `r`.  Exponential; intended for graphs with at most 16 vertices.
pub fn decompose_rs(g: &Graph, r: usize) -> Option<Vec<Vec<(usize, usize)>>> {
    if r == 0 || !g.m().is_multiple_of(r) || bipartite_check(g).is_err() {
        return None;
    }
    let edges: Vec<(usize, usize)> = g.edges().to_vec();
    let t = g.m() / r;
    let mut groups: Vec<Vec<(usize, usize)>> = vec![Vec::new(); t];
    let edge_set: HashSet<(usize, usize)> = edges.iter().copied().collect();
    if assign(g, &edges, &edge_set, 0, &mut groups, r) {
        Some(groups)
    } else {
        None
    }
}

fn assign(
    g: &Graph,
    edges: &[(usize, usize)],
    edge_set: &HashSet<(usize, usize)>,
    next: usize,
    groups: &mut Vec<Vec<(usize, usize)>>,
    r: usize,
) -> bool {
    if next == edges.len() {
        return true;
    }
    let e = edges[next];
    let mut first_empty_tried = false;
    for gi in 0..groups.len() {
        if groups[gi].is_empty() {
            // All empty groups are interchangeable; try only the first.
            if first_empty_tried {
                continue;
            }
            first_empty_tried = true;
        }
        if groups[gi].len() == r {
            continue;
        }
        if groups[gi]
            .iter()
            .any(|&(a, b)| a == e.0 || a == e.1 || b == e.0 || b == e.1)
        {
            continue;
        }
        groups[gi].push(e);
        let complete_ok = groups[gi].len() < r || induced_ok(g, edge_set, &groups[gi]);
        if complete_ok && assign(g, edges, edge_set, next + 1, groups, r) {
            return true;
        }
        groups[gi].pop();
    }
    false
}

fn induced_ok(g: &Graph, edge_set: &HashSet<(usize, usize)>, group: &[(usize, usize)]) -> bool {
    let verts: Vec<usize> = group.iter().flat_map(|&(a, b)| [a, b]).collect();
    let in_group: HashSet<(usize, usize)> = group.iter().copied().collect();
    for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            let key = if u < v { (u, v) } else { (v, u) };
            if edge_set.contains(&key) && !in_group.contains(&key) {
                return false;
            }
        }
    }
    let _ = g;
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_matching_is_a_valid_decomposition() {
        let rs = rs_matching(3, 3).unwrap();
        assert_eq!(rs.verify().unwrap(), (3, 1));
        assert_eq!(rs.graph.m(), 3);
    }

    #[test]
    fn partial_matching_reports_its_parameters() {
        let rs = rs_matching(3, 2).unwrap();
        assert_eq!(rs.verify().unwrap(), (2, 1));
        assert_eq!(rs.r(), 2);
        assert_eq!(rs.t(), 1);
    }

    #[test]
    fn complete_bipartite_split_is_not_induced() {
        // K_{2,2} into its two perfect matchings: each spans all four
        // vertices, whose induced subgraph has four edges, not two.
        let g = Graph::new(4, false, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let m1 = vec![(0, 2), (1, 3)];
        let m2 = vec![(0, 3), (1, 2)];
        let err = verify_rs_decomposition(&g, &[m1, m2]).unwrap_err();
        assert!(matches!(err, RsViolation::NotInduced { .. }), "{err}");
    }

    #[test]
    fn partition_violations_are_detected() {
        let g = Graph::new(4, false, &[(0, 2), (1, 3)]).unwrap();
        // Shared vertex.
        let err = verify_rs_decomposition(&g, &[vec![(0, 2)], vec![(0, 2)]]).unwrap_err();
        assert!(matches!(err, RsViolation::DuplicateEdge { .. }));
        // Missing edge.
        let err = verify_rs_decomposition(&g, &[vec![(0, 2)]]).unwrap_err();
        assert!(matches!(err, RsViolation::NotAPartition { u: 1, v: 3 }));
        // Foreign edge.
        let err = verify_rs_decomposition(&g, &[vec![(0, 2)], vec![(0, 3)]]).unwrap_err();
        assert!(matches!(err, RsViolation::EdgeNotInGraph { .. }));
        // Unequal sizes.
        let err =
            verify_rs_decomposition(&g, &[vec![(0, 2), (1, 3)], vec![(1, 3)]]).unwrap_err();
        assert!(matches!(err, RsViolation::UnequalSizes { .. }));
    }

    #[test]
    fn matching_property_is_enforced() {
        let g = Graph::new(4, false, &[(0, 2), (0, 3)]).unwrap();
        let err = verify_rs_decomposition(&g, &[vec![(0, 2), (0, 3)]]).unwrap_err();
        assert!(matches!(err, RsViolation::NotAMatching { vertex: 0, .. }));
    }

    #[test]
    fn odd_cycles_are_rejected() {
        let g = Graph::new(3, false, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let err = verify_rs_decomposition(&g, &[vec![(0, 1)]]).unwrap_err();
        assert!(matches!(err, RsViolation::NotBipartite { .. }));
    }

    #[test]
    fn hexagon_decomposes_into_opposite_edge_pairs() {
        // A 6-cycle drawn bipartite: opposite edges form induced matchings.
        let g = Graph::new(
            6,
            false,
            &[(0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)],
        )
        .unwrap();
        let groups = decompose_rs(&g, 2).expect("opposite-edge decomposition exists");
        assert_eq!(verify_rs_decomposition(&g, &groups).unwrap(), (2, 3));
    }

    #[test]
    fn complete_bipartite_has_no_size_two_decomposition() {
        let g = Graph::new(4, false, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(decompose_rs(&g, 2).is_none());
        // Singletons always work: every single edge is induced.
        let singles = decompose_rs(&g, 1).unwrap();
        assert_eq!(verify_rs_decomposition(&g, &singles).unwrap(), (1, 4));
    }

    #[test]
    fn file_roundtrip_preserves_the_decomposition() {
        let g = Graph::new(
            6,
            false,
            &[(0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)],
        )
        .unwrap();
        let groups = decompose_rs(&g, 2).unwrap();
        let rs = RsGraph::new(3, groups).unwrap();
        let mut buf = Vec::new();
        rs.write_to(&mut buf).unwrap();
        let back = RsGraph::read_from(&buf[..]).unwrap();
        assert_eq!(back, rs);
    }

    #[test]
    fn side_bounds_are_enforced() {
        // An edge inside side A is rejected up front.
        let err = RsGraph::new(2, vec![vec![(0, 1)]]).unwrap_err();
        assert!(matches!(err, RsViolation::EdgeNotInGraph { .. }));
    }
}
