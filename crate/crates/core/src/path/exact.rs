//! Exact longest simple path by exhaustive search.
//!
//! The graph is split into (weakly) connected components, searched largest
//! first so smaller components can be skipped once beaten.  Components of at
//! most [`DP_COMPONENT_LIMIT`] vertices use a subset dynamic program over
//! `endpoints[mask]` — the set of vertices at which some simple path visiting
//! exactly `mask` can end.  Larger components fall back to depth-first
//! branch-and-bound with two prunes: an upper bound from the set of unvisited
//! vertices still reachable from the path head, and an immediate stop once a
//! Hamiltonian path of the component is found.  The search charges one unit
//! of a caller-supplied node budget per tree node and fails once spent, since
//! the problem is NP-hard and adversarial inputs cannot be solved exactly.

use crate::graph::{Graph, PathWitness};
use crate::path::PathError;

/// Largest component size solved by the subset dynamic program.
const DP_COMPONENT_LIMIT: usize = 20;

/// Largest graph [`enumerate_simple_paths`] accepts; path counts explode
/// combinatorially past this.
pub const ENUMERATION_VERTEX_LIMIT: usize = 20;

/// Vertex sets of the weakly connected components, each ascending.
fn weak_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &nbrs[v] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Longest simple path in a graph, as a validated witness.
///
/// `budget` caps the total number of branch-and-bound nodes across all
/// components; exceeding it fails with [`PathError::BudgetExceeded`].
/// Components small enough for the dynamic program are exact and free.
pub fn exact_longest_path(g: &Graph, budget: u64) -> Result<PathWitness, PathError> {
    let n = g.n();
    if n == 0 {
        return Ok(PathWitness::empty());
    }
    let comps = weak_components(g);
    let mut order: Vec<usize> = (0..comps.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(comps[i].len()));

    let mut best = PathWitness::new(vec![0]);
    let mut budget_left = budget;
    for i in order {
        let comp = &comps[i];
        if comp.len().saturating_sub(1) <= best.len() {
            continue; // cannot beat the best path found so far
        }
        let (sub, map) = g.induced_subgraph(comp)?;
        let local = if sub.n() <= DP_COMPONENT_LIMIT {
            dp_longest_path(&sub)
        } else {
            bnb_longest_path(&sub, &mut budget_left, budget)?
        };
        if local.len() > best.len() {
            best = PathWitness::new(local.vertices.iter().map(|&v| map[v]).collect());
        }
        if best.len() == n - 1 {
            break;
        }
    }
    debug_assert!(g.validate_path(&best).is_ok());
    Ok(best)
}

/// Subset DP for one component of at most [`DP_COMPONENT_LIMIT`] vertices.
fn dp_longest_path(g: &Graph) -> PathWitness {
    let n = g.n();
    debug_assert!((1..=DP_COMPONENT_LIMIT).contains(&n));
    let mut out_mask = vec![0u32; n];
    let mut in_mask = vec![0u32; n];
    for &(u, v) in g.edges() {
        out_mask[u] |= 1 << v;
        in_mask[v] |= 1 << u;
        if !g.is_directed() {
            out_mask[v] |= 1 << u;
            in_mask[u] |= 1 << v;
        }
    }
    let full = 1usize << n;
    let mut endpoints = vec![0u32; full];
    for v in 0..n {
        endpoints[1 << v] = 1 << v;
    }
    let mut best_mask = 1usize;
    let mut best_pop = 1u32;
    for mask in 1..full {
        let eps = endpoints[mask];
        if eps == 0 {
            continue;
        }
        let pop = (mask as u32).count_ones();
        if pop > best_pop {
            best_pop = pop;
            best_mask = mask;
        }
        let mut e = eps;
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut ext = out_mask[v] & !(mask as u32);
            while ext != 0 {
                let w = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                endpoints[mask | (1 << w)] |= 1 << w;
            }
        }
    }
    // Walk the best mask backwards from its lowest-id endpoint.
    let mut mask = best_mask;
    let mut v = endpoints[best_mask].trailing_zeros() as usize;
    let mut rev = vec![v];
    while mask.count_ones() > 1 {
        let prev = mask & !(1 << v);
        let preds = endpoints[prev] & in_mask[v];
        debug_assert!(preds != 0, "endpoint table lost a predecessor");
        let u = preds.trailing_zeros() as usize;
        rev.push(u);
        mask = prev;
        v = u;
    }
    rev.reverse();
    PathWitness::new(rev)
}

struct Search<'g> {
    g: &'g Graph,
    words: usize,
    adj_bits: Vec<Vec<u64>>,
    unvisited: Vec<u64>,
    path: Vec<usize>,
    best: Vec<usize>,
    /// Component vertex count; a path this long is Hamiltonian and stops
    /// the search.
    target: usize,
    budget_total: u64,
    // Scratch bitsets for reachability, reused across nodes.
    reach: Vec<u64>,
    frontier: Vec<u64>,
    next: Vec<u64>,
}

impl Search<'_> {
    /// Vertices still reachable from `v` through unvisited vertices.
    fn reachable_from(&mut self, v: usize) -> usize {
        for i in 0..self.words {
            self.reach[i] = self.adj_bits[v][i] & self.unvisited[i];
            self.frontier[i] = self.reach[i];
        }
        loop {
            self.next[..self.words].fill(0);
            for i in 0..self.words {
                let mut word = self.frontier[i];
                while word != 0 {
                    let w = i * 64 + word.trailing_zeros() as usize;
                    word &= word - 1;
                    for j in 0..self.words {
                        self.next[j] |= self.adj_bits[w][j];
                    }
                }
            }
            let mut grew = false;
            for i in 0..self.words {
                self.next[i] &= self.unvisited[i] & !self.reach[i];
                if self.next[i] != 0 {
                    grew = true;
                    self.reach[i] |= self.next[i];
                }
            }
            if !grew {
                break;
            }
            std::mem::swap(&mut self.frontier, &mut self.next);
        }
        self.reach[..self.words]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    fn dfs(&mut self, v: usize, budget: &mut u64) -> Result<(), PathError> {
        if *budget == 0 {
            return Err(PathError::BudgetExceeded {
                budget: self.budget_total,
            });
        }
        *budget -= 1;
        self.unvisited[v / 64] &= !(1 << (v % 64));
        self.path.push(v);
        if self.path.len() > self.best.len() {
            self.best = self.path.clone();
        }
        if self.best.len() < self.target {
            let bound = self.path.len() + self.reachable_from(v);
            if bound > self.best.len() {
                for i in 0..self.g.neighbors(v).len() {
                    let w = self.g.neighbors(v)[i];
                    if self.unvisited[w / 64] >> (w % 64) & 1 == 1 {
                        self.dfs(w, budget)?;
                        if self.best.len() >= self.target {
                            break;
                        }
                    }
                }
            }
        }
        self.path.pop();
        self.unvisited[v / 64] |= 1 << (v % 64);
        Ok(())
    }
}

/// Branch-and-bound for one component, charging `budget_left`.
fn bnb_longest_path(
    g: &Graph,
    budget_left: &mut u64,
    budget_total: u64,
) -> Result<PathWitness, PathError> {
    let n = g.n();
    let words = n.div_ceil(64);
    let mut adj_bits = vec![vec![0u64; words]; n];
    for (v, bits) in adj_bits.iter_mut().enumerate() {
        for &w in g.neighbors(v) {
            bits[w / 64] |= 1 << (w % 64);
        }
    }
    let mut unvisited = vec![!0u64; words];
    if !n.is_multiple_of(64) {
        unvisited[words - 1] = (1u64 << (n % 64)) - 1;
    }
    let mut search = Search {
        g,
        words,
        adj_bits,
        unvisited,
        path: Vec::with_capacity(n),
        best: Vec::new(),
        target: n,
        budget_total,
        reach: vec![0; words],
        frontier: vec![0; words],
        next: vec![0; words],
    };
    for start in 0..n {
        if search.best.len() >= search.target {
            break;
        }
        search.dfs(start, budget_left)?;
    }
    Ok(PathWitness::new(search.best))
}

/// Every simple path of the graph, including single vertices; undirected
/// paths are reported once, oriented from their lower-id endpoint.
///
/// Only feasible on small graphs: fails above [`ENUMERATION_VERTEX_LIMIT`]
/// vertices, and even below it the output is exponential in size.
pub fn enumerate_simple_paths(g: &Graph) -> Result<Vec<PathWitness>, PathError> {
    let n = g.n();
    if n > ENUMERATION_VERTEX_LIMIT {
        return Err(PathError::EnumerationTooLarge {
            n,
            limit: ENUMERATION_VERTEX_LIMIT,
        });
    }
    fn visit(
        g: &Graph,
        v: usize,
        visited: &mut [bool],
        path: &mut Vec<usize>,
        out: &mut Vec<PathWitness>,
    ) {
        visited[v] = true;
        path.push(v);
        if g.is_directed() || path[0] <= *path.last().unwrap() {
            out.push(PathWitness::new(path.clone()));
        }
        for &w in g.neighbors(v) {
            if !visited[w] {
                visit(g, w, visited, path, out);
            }
        }
        path.pop();
        visited[v] = false;
    }
    let mut out = Vec::new();
    let mut visited = vec![false; n];
    let mut path = Vec::new();
    for start in 0..n {
        visit(g, start, &mut visited, &mut path, &mut out);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::component_rng;
    use rand::Rng;

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5)); // outer cycle
            edges.push((i, i + 5)); // spokes
            edges.push((i + 5, (i + 2) % 5 + 5)); // inner pentagram
        }
        Graph::new(10, false, &edges).unwrap()
    }

    fn random_graph(seed: u64, n_max: usize, directed: bool, p: f64) -> Graph {
        let mut rng = component_rng(seed, "exact-prop", 0);
        let n = rng.random_range(1..=n_max);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if (u < v || (directed && u != v)) && rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, directed, &edges).unwrap()
    }

    #[test]
    fn known_undirected_lengths() {
        let p4 = Graph::new(4, false, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(exact_longest_path(&p4, 1000).unwrap().len(), 3);
        let c5 = Graph::new(5, false, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert_eq!(exact_longest_path(&c5, 1000).unwrap().len(), 4);
        let star = Graph::new(4, false, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(exact_longest_path(&star, 1000).unwrap().len(), 2);
        let k4 = Graph::new(4, false, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(exact_longest_path(&k4, 1000).unwrap().len(), 3);
        assert_eq!(exact_longest_path(&petersen(), 10_000).unwrap().len(), 9);
    }

    #[test]
    fn known_directed_lengths() {
        let dag = Graph::new(4, true, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(exact_longest_path(&dag, 1000).unwrap().len(), 2);
        let c3 = Graph::new(3, true, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(exact_longest_path(&c3, 1000).unwrap().len(), 2);
        // One-way edges cannot be walked backwards.
        let fan = Graph::new(4, true, &[(1, 0), (2, 0), (3, 0)]).unwrap();
        assert_eq!(exact_longest_path(&fan, 1000).unwrap().len(), 1);
    }

    #[test]
    fn empty_and_tiny_graphs() {
        let lonely = Graph::new(3, false, &[]).unwrap();
        let p = exact_longest_path(&lonely, 10).unwrap();
        assert_eq!(p.len(), 0);
        assert_eq!(p.vertices.len(), 1);
    }

    #[test]
    fn best_component_wins() {
        // Triangle (longest 2) next to a path of length 3.
        let g = Graph::new(
            7,
            false,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6)],
        )
        .unwrap();
        let p = exact_longest_path(&g, 1000).unwrap();
        assert_eq!(p.len(), 3);
        let mut used = p.vertices.clone();
        used.sort_unstable();
        assert_eq!(used, vec![3, 4, 5, 6]);
        assert!(g.validate_path(&p).is_ok());
    }

    #[test]
    fn witnesses_validate_on_random_graphs() {
        for seed in 0..40 {
            for &directed in &[false, true] {
                let g = random_graph(seed, 9, directed, 0.4);
                let p = exact_longest_path(&g, 1_000_000).unwrap();
                assert!(g.validate_path(&p).is_ok(), "seed {seed} directed {directed}");
            }
        }
    }

    #[test]
    fn dp_agrees_with_exhaustive_enumeration() {
        for seed in 0..60 {
            for &directed in &[false, true] {
                let g = random_graph(seed, 7, directed, 0.45);
                let exact = exact_longest_path(&g, 1_000_000).unwrap().len();
                let brute = enumerate_simple_paths(&g)
                    .unwrap()
                    .iter()
                    .map(|p| p.len())
                    .max()
                    .unwrap();
                assert_eq!(exact, brute, "seed {seed} directed {directed}");
            }
        }
    }

    #[test]
    fn branch_and_bound_agrees_with_dp() {
        for seed in 100..160 {
            for &directed in &[false, true] {
                let g = random_graph(seed, 11, directed, 0.35);
                let via_dp = dp_longest_path(&g).len();
                let mut budget = u64::MAX;
                let via_bnb = bnb_longest_path(&g, &mut budget, u64::MAX).unwrap().len();
                assert_eq!(via_dp, via_bnb, "seed {seed} directed {directed}");
            }
        }
    }

    #[test]
    fn branch_and_bound_solves_petersen() {
        let mut budget = 1_000_000;
        let p = bnb_longest_path(&petersen(), &mut budget, 1_000_000).unwrap();
        assert_eq!(p.len(), 9);
    }

    #[test]
    fn large_planted_path_is_found_quickly() {
        // 60 vertices in a path plus chords; branch-and-bound's first greedy
        // dive hits the Hamiltonian early stop.
        let mut edges: Vec<_> = (0..59).map(|i| (i, i + 1)).collect();
        edges.push((0, 30));
        edges.push((10, 50));
        let g = Graph::new(60, false, &edges).unwrap();
        let p = exact_longest_path(&g, 10_000).unwrap();
        assert_eq!(p.len(), 59);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let edges: Vec<_> = (0..24).map(|i| (i, i + 1)).collect();
        let g = Graph::new(25, false, &edges).unwrap();
        assert!(matches!(
            exact_longest_path(&g, 5),
            Err(PathError::BudgetExceeded { budget: 5 })
        ));
        assert_eq!(exact_longest_path(&g, 1_000_000).unwrap().len(), 24);
    }

    #[test]
    fn enumeration_counts_are_exact() {
        // Path 0-1-2: three singletons, two edges, one two-edge path.
        let p3 = Graph::new(3, false, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(enumerate_simple_paths(&p3).unwrap().len(), 6);
        // Undirected triangle: 3 + 3 + 3 canonical paths.
        let tri = Graph::new(3, false, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(enumerate_simple_paths(&tri).unwrap().len(), 9);
        // Directed 3-cycle: same count, now by direction.
        let c3 = Graph::new(3, true, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(enumerate_simple_paths(&c3).unwrap().len(), 9);
    }

    #[test]
    fn enumeration_rejects_large_graphs() {
        let g = Graph::new(21, false, &[(0, 1)]).unwrap();
        assert!(matches!(
            enumerate_simple_paths(&g),
            Err(PathError::EnumerationTooLarge { n: 21, limit: 20 })
        ));
    }

    #[test]
    fn undirected_paths_are_reported_once() {
        let p3 = Graph::new(3, false, &[(0, 1), (1, 2)]).unwrap();
        let paths = enumerate_simple_paths(&p3).unwrap();
        for p in &paths {
            if p.vertices.len() > 1 {
                assert!(p.vertices.first() < p.vertices.last());
            }
        }
    }
}
