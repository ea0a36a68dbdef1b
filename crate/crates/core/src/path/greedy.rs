//! Greedy path extension by lowest-id unvisited neighbor.
//!
//! In any graph of minimum degree `t` (restricted to an allowed edge set
//! whose induced minimum degree is `t`), the walk can only get stuck at a
//! vertex all of whose neighbors are already on the path, so the path has
//! more than `t` vertices — at least `t` edges.  Combined with peeling this
//! turns a degree-core certificate into an actual path.

use std::collections::HashSet;

use crate::graph::{Graph, PathWitness};
use crate::path::PathError;

/// Canonical form of an edge as stored in an allowed set: endpoints sorted
/// for undirected graphs, kept as `(tail, head)` for directed ones.
pub(crate) fn canon_edge(directed: bool, u: usize, v: usize) -> (usize, usize) {
    if !directed && u > v {
        (v, u)
    } else {
        (u, v)
    }
}

fn next_step(
    g: &Graph,
    cur: usize,
    visited: &[bool],
    allowed: Option<&HashSet<(usize, usize)>>,
) -> Option<usize> {
    g.neighbors(cur).iter().copied().find(|&w| {
        !visited[w]
            && allowed.is_none_or(|a| a.contains(&canon_edge(g.is_directed(), cur, w)))
    })
}

/// Walk from `start`, always stepping to the lowest-id unvisited neighbor
/// (out-neighbor for directed graphs), using only edges in `allowed`
/// (`None` = every edge of `g`).  `cap` bounds the number of vertices on the
/// path; `None` means unbounded.  An isolated start yields a length-0 path.
pub fn greedy_extend(
    g: &Graph,
    allowed: Option<&HashSet<(usize, usize)>>,
    start: usize,
    cap: Option<usize>,
) -> Result<PathWitness, PathError> {
    if start >= g.n() {
        return Err(PathError::StartOutOfRange { start, n: g.n() });
    }
    let cap = cap.unwrap_or(usize::MAX).max(1);
    let mut visited = vec![false; g.n()];
    visited[start] = true;
    let mut vertices = vec![start];
    let mut cur = start;
    while vertices.len() < cap {
        match next_step(g, cur, &visited, allowed) {
            Some(w) => {
                visited[w] = true;
                vertices.push(w);
                cur = w;
            }
            None => break,
        }
    }
    Ok(PathWitness::new(vertices))
}

/// As [`greedy_extend`], then keep extending the *start* end of the path by
/// the same rule, still respecting `cap` on the total vertex count.  Only
/// meaningful for undirected graphs; for directed graphs this is identical
/// to [`greedy_extend`] (extending the head would need to walk edges
/// backwards).
pub fn greedy_extend_bidirectional(
    g: &Graph,
    allowed: Option<&HashSet<(usize, usize)>>,
    start: usize,
    cap: Option<usize>,
) -> Result<PathWitness, PathError> {
    let forward = greedy_extend(g, allowed, start, cap)?;
    if g.is_directed() {
        return Ok(forward);
    }
    let cap = cap.unwrap_or(usize::MAX).max(1);
    let mut visited = vec![false; g.n()];
    for &v in &forward.vertices {
        visited[v] = true;
    }
    let mut head = Vec::new();
    let mut cur = start;
    while head.len() + forward.vertices.len() < cap {
        match next_step(g, cur, &visited, allowed) {
            Some(w) => {
                visited[w] = true;
                head.push(w);
                cur = w;
            }
            None => break,
        }
    }
    head.reverse();
    head.extend(forward.vertices);
    Ok(PathWitness::new(head))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::peel_core;
    use crate::rng::component_rng;
    use rand::Rng;

    #[test]
    fn walk_prefers_lowest_id() {
        // From 1 the walk goes to 0 (not 2) and gets stuck.
        let g = Graph::new(4, false, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let p = greedy_extend(&g, None, 1, None).unwrap();
        assert_eq!(p.vertices, vec![1, 0]);
        assert_eq!(g.validate_path(&p), Ok(1));
    }

    #[test]
    fn bidirectional_rescues_the_other_end() {
        let g = Graph::new(4, false, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let p = greedy_extend_bidirectional(&g, None, 1, None).unwrap();
        assert_eq!(p.vertices, vec![3, 2, 1, 0]);
        assert_eq!(g.validate_path(&p), Ok(3));
    }

    #[test]
    fn directed_walk_follows_edge_direction() {
        let g = Graph::new(3, true, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            greedy_extend(&g, None, 0, None).unwrap().vertices,
            vec![0, 1, 2]
        );
        assert_eq!(greedy_extend(&g, None, 2, None).unwrap().vertices, vec![2]);
        // Bidirectional adds nothing on directed graphs.
        assert_eq!(
            greedy_extend_bidirectional(&g, None, 2, None)
                .unwrap()
                .vertices,
            vec![2]
        );
    }

    #[test]
    fn allowed_edges_confine_the_walk() {
        let g = Graph::new(4, false, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        let allowed: HashSet<(usize, usize)> =
            [(0, 1), (0, 2), (1, 2)].into_iter().collect();
        let p = greedy_extend(&g, Some(&allowed), 2, None).unwrap();
        assert_eq!(p.vertices, vec![2, 0, 1]);
        assert!(!p.vertices.contains(&3));
    }

    #[test]
    fn isolated_and_out_of_range_starts() {
        let g = Graph::new(3, false, &[(0, 1)]).unwrap();
        assert!(matches!(
            greedy_extend(&g, None, 7, None),
            Err(PathError::StartOutOfRange { start: 7, n: 3 })
        ));
        // Vertex 2 is isolated: length-0 path, not an error.
        assert_eq!(greedy_extend(&g, None, 2, None).unwrap().vertices, vec![2]);
    }

    #[test]
    fn visited_cap_truncates_the_walk() {
        let g = Graph::new(5, false, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let p = greedy_extend(&g, None, 4, Some(3)).unwrap();
        assert_eq!(p.vertices, vec![4, 3, 2]);
        let b = greedy_extend_bidirectional(&g, None, 2, Some(4)).unwrap();
        assert_eq!(b.vertices.len(), 4);
        assert!(g.validate_path(&b).is_ok());
        // A zero cap still yields the start vertex.
        assert_eq!(greedy_extend(&g, None, 0, Some(0)).unwrap().vertices, vec![0]);
    }

    #[test]
    fn core_walks_reach_the_min_degree_bound() {
        // Restricted to a peeled core of minimum induced degree t, any greedy
        // walk must place at least t edges before it can get stuck.
        for seed in 0..40u64 {
            let mut rng = component_rng(seed, "greedy-prop", 0);
            let n = rng.random_range(3..16usize);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            if edges.is_empty() {
                edges.push((0, 1));
            }
            let g = Graph::new(n, false, &edges).unwrap();
            let core = peel_core(&g).unwrap().core;
            let in_core = {
                let mut flags = vec![false; n];
                for &v in &core {
                    flags[v] = true;
                }
                flags
            };
            let allowed: HashSet<(usize, usize)> = g
                .edges()
                .iter()
                .copied()
                .filter(|&(u, v)| in_core[u] && in_core[v])
                .collect();
            let (sub, _) = g.induced_subgraph(&core).unwrap();
            let min_deg = (0..sub.n()).map(|v| sub.total_degree(v)).min().unwrap();
            let p = greedy_extend(&g, Some(&allowed), core[0], None).unwrap();
            assert!(
                p.len() >= min_deg,
                "seed {seed}: walk of {} edges under min degree {min_deg}",
                p.len()
            );
            assert!(g.validate_path(&p).is_ok());
        }
    }
}
