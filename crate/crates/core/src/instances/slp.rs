//! Coin-split permutation instances: directed graphs whose longest path
//! length equals a simple statistic of a hidden permutation.
//!
//! One party holds `r` coin flips and contributes, for each index `i`, a
//! single edge from `a_i` to one of two twin copies `b¹_i`, `b²_i` chosen by
//! the coin.  The other party contributes a uniform permutation matching
//! from *both* twin copies back to the `a` side.  Merging each twin pair
//! collapses the graph to disjoint cycles, so the merged longest path length
//! is `2·c − 1` where `c` is the longest cycle of the permutation; the
//! unmerged graph gains exactly one extra edge of path by starting at an
//! unused twin.  Both identities are verified exhaustively against the
//! exact solver in the tests.

use rand::Rng;

use crate::graph::{Graph, PathWitness};
use crate::rng::component_rng;

use super::perm::{longest_cycle, Permutation};
use super::InstanceError;

/// Vertex ids: `a_i = i`, `b¹_i = r + i`, `b²_i = 2r + i`.
///
/// `coins[i] == false` routes the `a_i` edge to `b¹_i`, `true` to `b²_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlpInstance {
    pub graph: Graph,
    pub r: usize,
    pub sigma: Permutation,
    pub coins: Vec<bool>,
    /// Coin-selected edges `a_i → b^{coin}_i`.
    pub m_edges: Vec<(usize, usize)>,
    /// Permutation edges `b¹_i → a_{σ(i)}`.
    pub n1_edges: Vec<(usize, usize)>,
    /// Permutation edges `b²_i → a_{σ(i)}`.
    pub n2_edges: Vec<(usize, usize)>,
}

impl SlpInstance {
    /// The twin copy selected by the coin at `i`.
    pub fn coin_copy(&self, i: usize) -> usize {
        if self.coins[i] {
            2 * self.r + i
        } else {
            self.r + i
        }
    }

    /// The twin copy *not* selected by the coin at `i`.
    pub fn other_copy(&self, i: usize) -> usize {
        if self.coins[i] {
            self.r + i
        } else {
            2 * self.r + i
        }
    }

    /// Edge-insertion stream: coin-selected edges first, then both banks of
    /// permutation edges.
    pub fn stream(&self) -> crate::stream::EventStream {
        use crate::stream::StreamEvent;
        let events: Vec<StreamEvent> = self
            .m_edges
            .iter()
            .chain(&self.n1_edges)
            .chain(&self.n2_edges)
            .map(|&(u, v)| StreamEvent::insert(u, v))
            .collect();
        crate::stream::EventStream::new(self.graph.n(), true, events)
    }

    /// Merge each twin pair `{b¹_i, b²_i}`; the result has `2r` vertices
    /// with `a_i → i` and the merged `b_i → r + i`.
    pub fn contracted(&self) -> Graph {
        let pairs: Vec<(usize, usize)> =
            (0..self.r).map(|i| (self.r + i, 2 * self.r + i)).collect();
        let (g, _mapping) = self
            .graph
            .contract_pairs(&pairs)
            .expect("twin pairs are disjoint and in range");
        g
    }
}

/// Build an instance from explicit parts; `coins` must match the
/// permutation's size.
pub fn slp_from_parts(
    sigma: Permutation,
    coins: Vec<bool>,
) -> Result<SlpInstance, InstanceError> {
    let r = sigma.len();
    if coins.len() != r {
        return Err(InstanceError::BitLengthMismatch {
            expected: r,
            got: coins.len(),
        });
    }
    let m_edges: Vec<(usize, usize)> = (0..r)
        .map(|i| (i, if coins[i] { 2 * r + i } else { r + i }))
        .collect();
    let n1_edges: Vec<(usize, usize)> = (0..r).map(|i| (r + i, sigma.apply(i))).collect();
    let n2_edges: Vec<(usize, usize)> = (0..r).map(|i| (2 * r + i, sigma.apply(i))).collect();
    let mut edges = m_edges.clone();
    edges.extend_from_slice(&n1_edges);
    edges.extend_from_slice(&n2_edges);
    let graph = Graph::new(3 * r, true, &edges)?;
    Ok(SlpInstance {
        graph,
        r,
        sigma,
        coins,
        m_edges,
        n1_edges,
        n2_edges,
    })
}

/// Draw coins and permutation from independent components of `seed`.
pub fn gen_slp(r: usize, seed: u64) -> SlpInstance {
    let mut coin_rng = component_rng(seed, "slp-coins", 0);
    let coins: Vec<bool> = (0..r).map(|_| coin_rng.random_bool(0.5)).collect();
    let mut perm_rng = component_rng(seed, "slp-perm", 0);
    let sigma = Permutation::uniform(r, &mut perm_rng);
    slp_from_parts(sigma, coins).expect("generated parts are consistent")
}

/// Longest path length of the *merged* graph: `2·c − 1` for `c` the longest
/// cycle of the permutation (0 for an empty instance).
pub fn slp_exact_lp(inst: &SlpInstance) -> usize {
    (2 * longest_cycle(&inst.sigma)).saturating_sub(1)
}

/// Longest path length of the unmerged graph: `2·c`, one more than the
/// merged value, gained by starting at the unused twin of the cycle's last
/// index.
pub fn slp_graph_lp(inst: &SlpInstance) -> usize {
    2 * longest_cycle(&inst.sigma)
}

/// An explicit longest path in the unmerged graph: walk a maximum cycle
/// `i₁ → … → i_c` of the permutation as
/// `other(i_c), a_{i₁}, coin(i₁), a_{i₂}, …, a_{i_c}, coin(i_c)`.
pub fn slp_witness_path(inst: &SlpInstance) -> PathWitness {
    let cycles = inst.sigma.cycles();
    let Some(cycle) = cycles.iter().max_by_key(|c| c.len()) else {
        return PathWitness::empty();
    };
    let last = *cycle.last().expect("cycles are nonempty");
    let mut vertices = Vec::with_capacity(2 * cycle.len() + 1);
    vertices.push(inst.other_copy(last));
    for &i in cycle {
        vertices.push(i);
        vertices.push(inst.coin_copy(i));
    }
    PathWitness::new(vertices)
}
