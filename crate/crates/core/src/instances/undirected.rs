//! Undirected one-pass hard instances: a masked bit is planted as the side
//! choice of one split edge, and a long path is forced to reveal it.
//!
//! The encoder holds a bit-string and routes every edge of an
//! induced-matching decomposition to one of two twin B-columns according to
//! the masked bits (mask and within-matching shuffle are public).  The
//! decoder side, interested in one bit, appends: a long subdivided backbone
//! path through every vertex *not* touched by the bit's matching, a fan
//! from the backbone's tail to every touched vertex, and two copies of a
//! uniform return matching on the touched vertices.  Long paths must then
//! traverse the backbone and enter the touched zone, where the alternating
//! walk exposes split edges of the bit's matching — in particular, with the
//! right cycle, the one carrying the queried bit.

use rand::Rng;

use std::collections::HashSet;

use crate::graph::{Graph, PathWitness};
use crate::rng::component_rng;
use crate::stream::{EventStream, StreamEvent};

use super::perm::Permutation;
use super::rs::RsGraph;
use super::InstanceError;

/// Vertex ids over a decomposition with sides of size `side`:
/// `A = [0, side)`, `B₁ = [side, 2·side)`, `B₂ = [2·side, 3·side)`;
/// subdivision vertices follow from `3·side`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirInstance {
    pub graph: Graph,
    pub rs: RsGraph,
    pub side: usize,
    /// Subdivision length: every backbone edge becomes a path of this many
    /// edges.
    pub ell: usize,
    /// The encoder's private bits, one per decomposition edge.
    pub x: Vec<bool>,
    /// Public mask bits.
    pub y: Vec<bool>,
    /// Public within-matching shuffle: the j-th edge of matching `i`
    /// carries masked bit `i·r + pi(j)`.
    pub pi: Permutation,
    /// Return matching: B-copies of edge `q` attach to the A-endpoint of
    /// edge `rho(q)`.
    pub rho: Permutation,
    /// The queried bit position.
    pub j: usize,
    /// `j` split as `i_star·r + j_star`.
    pub i_star: usize,
    pub j_star: usize,
    /// Side-routed copies of every decomposition edge, per matching.
    pub alice_edges: Vec<Vec<(usize, usize)>>,
    /// The backbone: subdivided path through all untouched originals.
    pub p_path: PathWitness,
    /// Fan from the backbone tail to every touched vertex.
    pub fan: Vec<(usize, usize)>,
    /// Return matching on the B₁ copies.
    pub n1_edges: Vec<(usize, usize)>,
    /// Return matching on the B₂ copies.
    pub n2_edges: Vec<(usize, usize)>,
    /// B₁ and B₂ placements of the edge carrying the queried bit.
    pub special_b1: (usize, usize),
    pub special_b2: (usize, usize),
    /// A longest-path witness that traverses the backbone, one fan edge,
    /// and the alternating walk through the queried bit's cycle.
    pub witness: PathWitness,
}

impl UndirInstance {
    /// Number of edges in the alternating tail of the witness.
    pub fn r_len(&self) -> usize {
        self.witness.len() - self.p_path.len() - 1
    }

    /// Encoder's edges first (matching order), then backbone, fan, and both
    /// return banks.
    pub fn stream(&self) -> EventStream {
        let mut events: Vec<StreamEvent> = Vec::new();
        for m in &self.alice_edges {
            events.extend(m.iter().map(|&(u, v)| StreamEvent::insert(u, v)));
        }
        events.extend(self.p_path.edges().map(|(u, v)| StreamEvent::insert(u, v)));
        for &(u, v) in self.fan.iter().chain(&self.n1_edges).chain(&self.n2_edges) {
            events.push(StreamEvent::insert(u, v));
        }
        EventStream::new(self.graph.n(), false, events)
    }
}

fn norm(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Build the full two-party graph for bit-string `x`, queried position `j`,
/// and subdivision length `ell` over the decomposition `rs`.
pub fn gen_undirected_reduction(
    rs: &RsGraph,
    x: &[bool],
    j: usize,
    ell: usize,
    seed: u64,
) -> Result<UndirInstance, InstanceError> {
    let (r, t) = rs.verify()?;
    if ell < 4 {
        return Err(InstanceError::SubdivisionTooShort { ell });
    }
    let bits = r * t;
    if x.len() != bits {
        return Err(InstanceError::BitLengthMismatch {
            expected: bits,
            got: x.len(),
        });
    }
    if j >= bits {
        return Err(InstanceError::IndexOutOfRange { j, n: bits });
    }
    let side = rs.side;
    if r == side {
        return Err(InstanceError::NoGatewayVertices { side, r });
    }

    let pi = Permutation::uniform(r, &mut component_rng(seed, "undir-pi", 0));
    let y: Vec<bool> = {
        let mut rng = component_rng(seed, "undir-y", 0);
        (0..bits).map(|_| rng.random_bool(0.5)).collect()
    };
    let rho = Permutation::uniform(r, &mut component_rng(seed, "undir-n", 0));
    let i_star = j / r;
    let j_star = j % r;

    // Encoder: route each edge by its masked bit.
    let alice_edges: Vec<Vec<(usize, usize)>> = rs
        .matchings
        .iter()
        .enumerate()
        .map(|(i, m)| {
            m.iter()
                .enumerate()
                .map(|(q, &(a, b))| {
                    let bit = i * r + pi.apply(q);
                    if x[bit] ^ y[bit] {
                        (a, b + side)
                    } else {
                        (a, b)
                    }
                })
                .collect()
        })
        .collect();

    // Decoder side: the touched vertices are those of matching `i_star`.
    let picked = &rs.matchings[i_star];
    let a_touched: HashSet<usize> = picked.iter().map(|e| e.0).collect();
    let b_touched: HashSet<usize> = picked.iter().map(|e| e.1).collect();

    // Backbone order: untouched A, then untouched B₁, then untouched B₂,
    // ascending within each block.
    let mut backbone: Vec<usize> = (0..side).filter(|v| !a_touched.contains(v)).collect();
    backbone.extend((side..2 * side).filter(|v| !b_touched.contains(v)));
    backbone.extend((2 * side..3 * side).filter(|v| !b_touched.contains(&(v - side))));

    // Subdivide each backbone edge into `ell` edges.
    let mut next_id = 3 * side;
    let mut p_vertices: Vec<usize> = vec![backbone[0]];
    for &w in &backbone[1..] {
        for _ in 0..ell - 1 {
            p_vertices.push(next_id);
            next_id += 1;
        }
        p_vertices.push(w);
    }
    let p_path = PathWitness::new(p_vertices);
    let tail = *p_path.vertices.last().expect("backbone is nonempty");

    // Fan: tail to every touched vertex, A first, then B₁, then B₂.
    let mut touched_a: Vec<usize> = a_touched.iter().copied().collect();
    touched_a.sort_unstable();
    let mut touched_b: Vec<usize> = b_touched.iter().copied().collect();
    touched_b.sort_unstable();
    let mut fan: Vec<(usize, usize)> = Vec::new();
    for &a in &touched_a {
        fan.push((tail, a));
    }
    for &b in &touched_b {
        fan.push((tail, b));
    }
    for &b in &touched_b {
        fan.push((tail, b + side));
    }

    // Return matching: both copies of edge q's B-endpoint attach to the
    // A-endpoint of edge rho(q).
    let n1_edges: Vec<(usize, usize)> = (0..r)
        .map(|q| norm(picked[rho.apply(q)].0, picked[q].1))
        .collect();
    let n2_edges: Vec<(usize, usize)> = (0..r)
        .map(|q| norm(picked[rho.apply(q)].0, picked[q].1 + side))
        .collect();

    let mut edges: Vec<(usize, usize)> = alice_edges.iter().flatten().copied().collect();
    edges.extend(p_path.edges());
    edges.extend_from_slice(&fan);
    edges.extend_from_slice(&n1_edges);
    edges.extend_from_slice(&n2_edges);
    let graph = Graph::new(next_id, false, &edges)?;

    // The edge carrying bit `j` is the one shuffled onto position j_star.
    let q0 = pi.inverse().apply(j_star);
    let (sa, sb) = picked[q0];
    let special_b1 = norm(sa, sb);
    let special_b2 = norm(sa, sb + side);

    // Witness: backbone, one fan edge to the A-endpoint of the special
    // edge, then alternate split/return edges around its cycle.
    let mut witness_vertices = p_path.vertices.clone();
    let cycle = rho
        .cycles()
        .into_iter()
        .find(|c| c.contains(&q0))
        .expect("every index lies on a cycle");
    let start = cycle.iter().position(|&q| q == q0).expect("q0 is on its cycle");
    witness_vertices.push(picked[q0].0);
    for step in 0..cycle.len() {
        let q = cycle[(start + step) % cycle.len()];
        witness_vertices.push(alice_edges[i_star][q].1);
        if step + 1 < cycle.len() {
            let next_q = cycle[(start + step + 1) % cycle.len()];
            witness_vertices.push(picked[next_q].0);
        }
    }
    let witness = PathWitness::new(witness_vertices);

    let inst = UndirInstance {
        graph,
        rs: rs.clone(),
        side,
        ell,
        x: x.to_vec(),
        y,
        pi,
        rho,
        j,
        i_star,
        j_star,
        alice_edges,
        p_path,
        fan,
        n1_edges,
        n2_edges,
        special_b1,
        special_b2,
        witness,
    };
    debug_assert!(inst.graph.validate_path(&inst.witness).is_ok());
    Ok(inst)
}

/// Read the planted bit off a path: find which twin column the special edge
/// lands in and un-mask it.  `None` when the path misses the special edge
/// (or is not a path of the instance graph, or shows both placements).
pub fn decode_undirected(inst: &UndirInstance, path: &PathWitness) -> Option<bool> {
    inst.graph.validate_path(path).ok()?;
    let edges: HashSet<(usize, usize)> = path.edges().map(|(u, v)| norm(u, v)).collect();
    let mask = inst.y[inst.j];
    match (
        edges.contains(&inst.special_b1),
        edges.contains(&inst.special_b2),
    ) {
        (true, false) => Some(mask),
        (false, true) => Some(!mask),
        _ => None,
    }
}

/// Structural length bound: any simple path has at most
/// `3·(side − r)·ell + 2·|path ∩ M_{i*}| + 2·ell` edges, where `M_{i*}` is
/// the split image of the queried matching.
pub fn undirected_bound_holds(inst: &UndirInstance, path: &PathWitness) -> bool {
    if inst.graph.validate_path(path).is_err() {
        return false;
    }
    let split: HashSet<(usize, usize)> = inst.alice_edges[inst.i_star]
        .iter()
        .map(|&(u, v)| norm(u, v))
        .collect();
    let overlap = path
        .edges()
        .filter(|&(u, v)| split.contains(&norm(u, v)))
        .count();
    let r = inst.rs.matchings[inst.i_star].len();
    path.len() <= 3 * (inst.side - r) * inst.ell + 2 * overlap + 2 * inst.ell
}
