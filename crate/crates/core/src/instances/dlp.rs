//! Coin-split instances built on an induced-matching decomposition.
//!
//! Generalizes the single-permutation gadget: one party splits *every* edge
//! of a bipartite graph into one of two twin columns by a private coin; the
//! other picks one matching of a public induced-matching decomposition and
//! wires a uniform return matching from both twin copies of its B-side back
//! to its A-side.  Induced-ness forces any long directed path into the
//! picked matching: after dropping its first and last edge, a path can only
//! use the picked matching's coin copies and the return edges.  That
//! confinement is the verifiable structural claim of this module.

use rand::Rng;

use crate::graph::{Graph, PathViolation, PathWitness};
use crate::rng::component_rng;
use crate::stream::{EventStream, StreamEvent};

use super::perm::Permutation;
use super::rs::RsGraph;
use super::InstanceError;

use std::collections::HashSet;

use thiserror::Error;

/// Why a path fails the trimmed-path confinement check.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrimViolation {
    #[error("path has length {len}, need at least 2")]
    PathTooShort { len: usize },
    #[error("not a path in the instance graph: {0}")]
    InvalidPath(#[from] PathViolation),
    #[error("trimmed path uses foreign edge ({u}, {v})")]
    ForeignEdge { u: usize, v: usize },
}

/// Vertex ids over a decomposition with sides of size `side`:
/// `A = [0, side)`, `B₁ = [side, 2·side)`, `B₂ = [2·side, 3·side)`.
///
/// `coins[i][j] == false` routes the j-th edge of matching `i` to its B₁
/// copy, `true` to B₂.  `choice` is the matching the return edges attach to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DlpInstance {
    pub graph: Graph,
    pub rs: RsGraph,
    pub side: usize,
    pub coins: Vec<Vec<bool>>,
    pub choice: usize,
    pub rho: Permutation,
    /// Coin-selected copies, per matching: `a → b` or `a → b + side`.
    pub m_split: Vec<Vec<(usize, usize)>>,
    /// Return edges from B₁ copies: `b_q → a_{ρ(q)}` over matching `choice`.
    pub n1_edges: Vec<(usize, usize)>,
    /// The same return matching from the B₂ copies.
    pub n2_edges: Vec<(usize, usize)>,
}

impl DlpInstance {
    /// Edge-insertion stream: all coin-selected copies in matching order,
    /// then both banks of return edges.
    pub fn stream(&self) -> EventStream {
        let mut events = Vec::with_capacity(self.graph.m());
        for m in &self.m_split {
            events.extend(m.iter().map(|&(u, v)| StreamEvent::insert(u, v)));
        }
        for &(u, v) in self.n1_edges.iter().chain(&self.n2_edges) {
            events.push(StreamEvent::insert(u, v));
        }
        EventStream::new(self.graph.n(), true, events)
    }

    /// The edges a trimmed path may use: the chosen matching's coin copies
    /// plus both banks of return edges.
    pub fn allowed_trimmed_edges(&self) -> HashSet<(usize, usize)> {
        self.m_split[self.choice]
            .iter()
            .chain(&self.n1_edges)
            .chain(&self.n2_edges)
            .copied()
            .collect()
    }
}

/// Split a decomposition by fresh coins and attach a uniform return
/// matching to one uniformly chosen matching.
pub fn gen_dlp(rs: &RsGraph, seed: u64) -> Result<DlpInstance, InstanceError> {
    let (r, t) = rs.verify()?;
    if t == 0 {
        return Err(InstanceError::IndexOutOfRange { j: 0, n: 0 });
    }
    let side = rs.side;
    let mut coin_rng = component_rng(seed, "dlp-coins", 0);
    let coins: Vec<Vec<bool>> = rs
        .matchings
        .iter()
        .map(|m| (0..m.len()).map(|_| coin_rng.random_bool(0.5)).collect())
        .collect();
    let choice = component_rng(seed, "dlp-choice", 0).random_range(0..t);
    let rho = Permutation::uniform(r, &mut component_rng(seed, "dlp-n", 0));

    let m_split: Vec<Vec<(usize, usize)>> = rs
        .matchings
        .iter()
        .zip(&coins)
        .map(|(m, flips)| {
            m.iter()
                .zip(flips)
                .map(|(&(a, b), &flip)| (a, if flip { b + side } else { b }))
                .collect()
        })
        .collect();

    let picked = &rs.matchings[choice];
    let n1_edges: Vec<(usize, usize)> =
        (0..r).map(|q| (picked[q].1, picked[rho.apply(q)].0)).collect();
    let n2_edges: Vec<(usize, usize)> = n1_edges
        .iter()
        .map(|&(b, a)| (b + side, a))
        .collect();

    let mut edges: Vec<(usize, usize)> = m_split.iter().flatten().copied().collect();
    edges.extend_from_slice(&n1_edges);
    edges.extend_from_slice(&n2_edges);
    let graph = Graph::new(3 * side, true, &edges)?;

    Ok(DlpInstance {
        graph,
        rs: rs.clone(),
        side,
        coins,
        choice,
        rho,
        m_split,
        n1_edges,
        n2_edges,
    })
}

/// Witness path along a longest cycle of the return permutation: each
/// chosen-matching edge's A-endpoint, then its coin copy, then back through
/// the return bank to the next edge of the cycle, stopping before the cycle
/// closes.  Its length is exactly `2·lc(ρ) − 1` edges, a lower bound on the
/// instance's longest path (foreign first/last edges can add to it).
pub fn dlp_witness_path(inst: &DlpInstance) -> PathWitness {
    let cycles = inst.rho.cycles();
    let Some(longest) = cycles.iter().max_by_key(|c| c.len()) else {
        return PathWitness::empty();
    };
    let mut vs = Vec::with_capacity(2 * longest.len());
    for &q in longest {
        let (a, b) = inst.m_split[inst.choice][q];
        vs.push(a);
        vs.push(b);
    }
    PathWitness::new(vs)
}

/// Check the confinement lemma on one path: it must be a directed path of
/// length at least 2 in the instance graph, and every edge except the first
/// and last must come from the chosen matching's coin copies or the return
/// edges.
pub fn verify_trimmed_path(inst: &DlpInstance, path: &PathWitness) -> Result<(), TrimViolation> {
    inst.graph.validate_path(path)?;
    if path.len() < 2 {
        return Err(TrimViolation::PathTooShort { len: path.len() });
    }
    let allowed = inst.allowed_trimmed_edges();
    let edges: Vec<(usize, usize)> = path.edges().collect();
    for &(u, v) in &edges[1..edges.len() - 1] {
        if !allowed.contains(&(u, v)) {
            return Err(TrimViolation::ForeignEdge { u, v });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::rs::{decompose_rs, rs_matching};
    use super::*;
    use crate::path::{enumerate_simple_paths, exact_longest_path};

    fn hexagon_rs() -> RsGraph {
        let g = Graph::new(
            6,
            false,
            &[(0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)],
        )
        .unwrap();
        RsGraph::new(3, decompose_rs(&g, 2).unwrap()).unwrap()
    }

    #[test]
    fn return_edges_are_the_only_way_back_into_side_a() {
        let rs = hexagon_rs();
        let inst = gen_dlp(&rs, 11).unwrap();
        let returns: HashSet<(usize, usize)> = inst
            .n1_edges
            .iter()
            .chain(&inst.n2_edges)
            .copied()
            .collect();
        for &(u, v) in inst.graph.edges() {
            if v < inst.side {
                assert!(returns.contains(&(u, v)), "unexpected A-head ({u}, {v})");
                let picked: Vec<usize> =
                    inst.rs.matchings[inst.choice].iter().map(|e| e.0).collect();
                assert!(picked.contains(&v));
            } else {
                assert!(u < inst.side, "edge ({u}, {v}) starts outside side A");
            }
        }
    }

    #[test]
    fn coins_route_split_copies() {
        let rs = rs_matching(4, 3).unwrap();
        let inst = gen_dlp(&rs, 3).unwrap();
        for (m, (split, flips)) in rs
            .matchings
            .iter()
            .zip(inst.m_split.iter().zip(&inst.coins))
        {
            for ((&(a, b), &(sa, sb)), &flip) in m.iter().zip(split).zip(flips) {
                assert_eq!(a, sa);
                assert_eq!(sb, if flip { b + inst.side } else { b });
            }
        }
    }

    #[test]
    fn witness_follows_the_longest_return_cycle() {
        use super::super::perm::longest_cycle;
        for seed in 0..20u64 {
            let rs = rs_matching(5, 4).unwrap();
            let inst = gen_dlp(&rs, seed).unwrap();
            let w = dlp_witness_path(&inst);
            let lc = longest_cycle(&inst.rho);
            assert_eq!(w.len(), 2 * lc - 1);
            assert_eq!(inst.graph.validate_path(&w).unwrap(), w.len());
            if w.len() >= 2 {
                verify_trimmed_path(&inst, &w).unwrap();
            }
            let exact = exact_longest_path(&inst.graph, 10_000_000).unwrap();
            assert!(exact.len() >= w.len());
        }
    }

    #[test]
    fn trimmed_paths_are_confined_exhaustively() {
        for (rs, seeds) in [
            (hexagon_rs(), 0..6u64),
            (rs_matching(3, 3).unwrap(), 6..12u64),
            (rs_matching(4, 2).unwrap(), 12..18u64),
        ] {
            for seed in seeds {
                let inst = gen_dlp(&rs, seed).unwrap();
                let mut long_paths = 0usize;
                for path in enumerate_simple_paths(&inst.graph).unwrap() {
                    if path.len() >= 2 {
                        long_paths += 1;
                        verify_trimmed_path(&inst, &path).unwrap();
                    }
                }
                assert!(long_paths > 0, "no length-2 paths under seed {seed}");
            }
        }
    }

    #[test]
    fn single_matching_instance_collapses_to_the_return_permutation() {
        // With one full matching (q, side+q), paths chain a_q → b_q → a_ρ(q),
        // so the longest path follows ρ's longest cycle exactly as in the
        // single-permutation gadget.
        for side in 2..=5 {
            let rs = rs_matching(side, side).unwrap();
            let inst = gen_dlp(&rs, side as u64).unwrap();
            let c = inst
                .rho
                .cycles()
                .iter()
                .map(Vec::len)
                .max()
                .unwrap();
            let lp = exact_longest_path(&inst.graph, 10_000_000).unwrap();
            assert_eq!(lp.len(), 2 * c);
        }
    }

    #[test]
    fn verifier_rejects_short_foreign_and_invalid_paths() {
        let rs = hexagon_rs();
        let inst = gen_dlp(&rs, 5).unwrap();
        // Any single edge is too short.
        let &(u, v) = &inst.graph.edges()[0];
        let err = verify_trimmed_path(&inst, &PathWitness::new(vec![u, v])).unwrap_err();
        assert!(matches!(err, TrimViolation::PathTooShort { len: 1 }));
        // A non-path is invalid.
        let err = verify_trimmed_path(&inst, &PathWitness::new(vec![0, 1, 2])).unwrap_err();
        assert!(matches!(err, TrimViolation::InvalidPath(_)));
        // Doctor an instance so no interior edge is allowed: the verifier
        // must notice, not hold vacuously.  A path of length 3 (one interior
        // edge) needs the return permutation to move something, so scan a
        // few seeds for one.
        let (inst, witness) = (0..50)
            .find_map(|seed| {
                let inst = gen_dlp(&rs, seed).unwrap();
                enumerate_simple_paths(&inst.graph)
                    .unwrap()
                    .into_iter()
                    .find(|p| p.len() >= 3)
                    .map(|w| (inst, w))
            })
            .expect("some seed yields a length-3 path");
        let mut doctored = inst;
        let picked = doctored.choice;
        doctored.m_split[picked].clear();
        doctored.n1_edges.clear();
        doctored.n2_edges.clear();
        let err = verify_trimmed_path(&doctored, &witness).unwrap_err();
        assert!(matches!(err, TrimViolation::ForeignEdge { .. }));
    }

    #[test]
    fn broken_decompositions_are_rejected() {
        let mut rs = rs_matching(3, 3).unwrap();
        rs.matchings[0].pop();
        let err = gen_dlp(&rs, 0).unwrap_err();
        assert!(matches!(err, InstanceError::Rs(_)));
    }

    #[test]
    fn generation_is_deterministic_and_streams_replay() {
        let rs = hexagon_rs();
        let a = gen_dlp(&rs, 9).unwrap();
        let b = gen_dlp(&rs, 9).unwrap();
        assert_eq!(a, b);
        let replayed = a.stream().apply().unwrap();
        assert_eq!(replayed, a.graph);
    }
}
