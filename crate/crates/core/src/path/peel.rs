//! Peeling a graph down to its high-average-degree core.
//!
//! Repeatedly removing any vertex whose current total degree is at most half
//! the original average degree (that is, at most `m/n`) always halts at a
//! nonempty induced subgraph whose minimum degree exceeds `m/n`: each removal
//! deletes at most `m/n` edges and the last removal would delete none, so the
//! removals cannot account for all `m` edges.  The surviving core is where
//! greedy extension is guaranteed a long path.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_rational::Ratio;

use crate::graph::Graph;
use crate::path::PathError;

/// Outcome of peeling: the surviving core and the order of removals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreResult {
    /// Vertices of the core, ascending.
    pub core: Vec<usize>,
    /// The peeling threshold `m/n`, half the average total degree.
    pub threshold: Ratio<u64>,
    /// Peeled vertices, in removal order.
    pub removal_order: Vec<usize>,
}

/// Peel vertices of current total degree at most `m/n` (ties broken by
/// lowest degree, then lowest id) until the remainder has minimum degree
/// strictly above `m/n`.
///
/// The threshold is fixed from the *input* graph; degrees are total degree
/// (in plus out for directed graphs).  Fails on graphs with no edges, where
/// no nonempty core of positive minimum degree exists.
pub fn peel_core(g: &Graph) -> Result<CoreResult, PathError> {
    let n = g.n();
    let m = g.m();
    if n == 0 || m == 0 {
        return Err(PathError::EmptyGraph);
    }
    // Underlying adjacency with multiplicity: a directed pair u->v, v->u
    // contributes two to each endpoint's total degree.
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    let mut deg: Vec<usize> = nbrs.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut removal_order = Vec::new();
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        (0..n).map(|v| Reverse((deg[v], v))).collect();

    while let Some(Reverse((d, v))) = heap.pop() {
        if removed[v] || d != deg[v] {
            continue; // superseded by a later decrement
        }
        // Peel iff deg <= m/n, compared exactly as deg * n <= m.
        if (d as u128) * (n as u128) > m as u128 {
            break; // the minimum survivor already beats the threshold
        }
        removed[v] = true;
        removal_order.push(v);
        for &w in &nbrs[v] {
            if !removed[w] {
                deg[w] -= 1;
                heap.push(Reverse((deg[w], w)));
            }
        }
    }

    let core: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    debug_assert!(!core.is_empty(), "peeling exhausted a graph with edges");
    Ok(CoreResult {
        core,
        threshold: Ratio::new(m as u64, n as u64),
        removal_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::component_rng;
    use rand::Rng;

    fn min_core_degree(g: &Graph, core: &[usize]) -> usize {
        let (sub, _) = g.induced_subgraph(core).unwrap();
        (0..sub.n()).map(|v| sub.total_degree(v)).min().unwrap()
    }

    #[test]
    fn pendant_is_peeled_off_a_triangle() {
        let g = Graph::new(4, false, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        let r = peel_core(&g).unwrap();
        assert_eq!(r.core, vec![0, 1, 2]);
        assert_eq!(r.removal_order, vec![3]);
        assert_eq!(r.threshold, Ratio::new(4, 4));
    }

    #[test]
    fn peeling_cascades_down_a_tail() {
        // K4 on {0,1,2,3} with a tail 3-4-5.
        let g = Graph::new(
            6,
            false,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (3, 4),
                (4, 5),
            ],
        )
        .unwrap();
        let r = peel_core(&g).unwrap();
        assert_eq!(r.removal_order, vec![5, 4]);
        assert_eq!(r.core, vec![0, 1, 2, 3]);
    }

    #[test]
    fn equal_degrees_are_peeled_in_id_order() {
        // Triangle plus three isolated vertices.
        let g = Graph::new(6, false, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let r = peel_core(&g).unwrap();
        assert_eq!(r.removal_order, vec![3, 4, 5]);
        assert_eq!(r.core, vec![0, 1, 2]);
    }

    #[test]
    fn regular_graphs_survive_whole() {
        let c5 = Graph::new(5, false, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let r = peel_core(&c5).unwrap();
        assert_eq!(r.core, vec![0, 1, 2, 3, 4]);
        assert!(r.removal_order.is_empty());
    }

    #[test]
    fn edgeless_graph_is_rejected() {
        let g = Graph::new(3, false, &[]).unwrap();
        assert!(matches!(peel_core(&g), Err(PathError::EmptyGraph)));
    }

    #[test]
    fn directed_peeling_uses_total_degree() {
        // Directed triangle plus a source pointing into it: the source has
        // total degree 1 = m/n and is peeled; the cycle survives.
        let g = Graph::new(4, true, &[(0, 1), (1, 2), (2, 0), (3, 0)]).unwrap();
        let r = peel_core(&g).unwrap();
        assert_eq!(r.removal_order, vec![3]);
        assert_eq!(r.core, vec![0, 1, 2]);
    }

    #[test]
    fn core_always_beats_threshold_on_random_graphs() {
        for seed in 0..60u64 {
            let mut rng = component_rng(seed, "peel-prop", 0);
            let n = rng.random_range(2..14usize);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.3) {
                        edges.push((u, v));
                    }
                }
            }
            if edges.is_empty() {
                edges.push((0, 1));
            }
            let g = Graph::new(n, false, &edges).unwrap();
            let r = peel_core(&g).unwrap();
            assert!(!r.core.is_empty());
            // Core and removals partition the vertex set.
            let mut all: Vec<usize> = r.core.iter().chain(r.removal_order.iter()).copied().collect();
            all.sort_unstable();
            assert_eq!(all, (0..n).collect::<Vec<_>>());
            // Every core vertex beats the threshold inside the core.
            let min_deg = min_core_degree(&g, &r.core);
            assert!(
                (min_deg as u64) * (n as u64) > g.m() as u64,
                "seed {seed}: min core degree {min_deg} fails threshold {}",
                r.threshold
            );
        }
    }
}
