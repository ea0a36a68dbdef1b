//! Insertion–deletion hard instances: a planted bit survives a wave of
//! deletions as the column choice of one edge on a diagonal chain.
//!
//! The encoder embeds its bit-matrix into an `n×n` grid (masked by public
//! bits, rows and columns shuffled by public permutations) and inserts one
//! edge per cell, routed to twin column B₁ or B₂ by the cell's bit.  The
//! decoder, interested in one cell, deletes every edge in the quadrant
//! below-right of it except two diagonals, and re-inserts the *opposite*
//! copy along the second diagonal.  What survives around the queried cell
//! is a zigzag chain: its first edge is the queried cell's own copy, and
//! walking the chain yields a path of length `2·(n − √N) − 1` or more, so
//! any comparably long path pins down the planted bit.

use rand::Rng;

use std::collections::HashSet;

use crate::graph::{Graph, PathWitness};
use crate::rng::component_rng;
use crate::stream::{EventStream, StreamEvent};

use super::perm::Permutation;
use super::InstanceError;

/// Vertex ids over side size `n`: `A = [0, n)`, `B₁ = [n, 2n)`,
/// `B₂ = [2n, 3n)`.  Cell `(i, j)` of the grid owns the vertex pair
/// `(pi1(i), pi2(j))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsDelInstance {
    /// Final graph after replaying the whole stream.
    pub graph: Graph,
    /// Insertions, deletions, and re-insertions, in protocol order.
    pub stream: EventStream,
    /// Grid side.
    pub n: usize,
    /// Number of encoder bits; a perfect square embedded top-left.
    pub bits: usize,
    /// `√bits`.
    pub root: usize,
    pub x: Vec<bool>,
    /// Queried bit position and its grid cell.
    pub j: usize,
    pub i_star: usize,
    pub j_star: usize,
    /// Public row/column shuffles and mask.
    pub pi1: Permutation,
    pub pi2: Permutation,
    pub z: Vec<bool>,
    /// Masked grid actually encoded (embedding ⊕ mask), row-major `n×n`.
    pub y: Vec<bool>,
    /// Surviving encoder edges on the main diagonal from the queried cell.
    pub m_edges: Vec<(usize, usize)>,
    /// Both copies along the second diagonal (B₁ side).
    pub n1_edges: Vec<(usize, usize)>,
    /// Both copies along the second diagonal (B₂ side).
    pub n2_edges: Vec<(usize, usize)>,
    /// B₁ and B₂ placements of the queried cell's edge.
    pub special_b1: (usize, usize),
    pub special_b2: (usize, usize),
    /// Zigzag path alternating diagonal and second-diagonal edges.
    pub witness: PathWitness,
}

fn cell_edge(pi1: &Permutation, pi2: &Permutation, n: usize, i: usize, jj: usize, high: bool) -> (usize, usize) {
    let b = if high { 2 * n } else { n };
    (pi1.apply(i), b + pi2.apply(jj))
}

/// Build the full instance for bit-string `x` (length a perfect square),
/// grid side `n`, and queried position `j`.
pub fn gen_insdel_reduction(
    x: &[bool],
    n: usize,
    j: usize,
    seed: u64,
) -> Result<InsDelInstance, InstanceError> {
    let bits = x.len();
    let root = bits.isqrt();
    if root * root != bits {
        return Err(InstanceError::NotASquare { n: bits });
    }
    if n < root {
        return Err(InstanceError::SideTooSmall { side: n, need: root });
    }
    if j >= bits {
        return Err(InstanceError::IndexOutOfRange { j, n: bits });
    }
    let i_star = j / root;
    let j_star = j % root;

    let pi1 = Permutation::uniform(n, &mut component_rng(seed, "insdel-pi1", 0));
    let pi2 = Permutation::uniform(n, &mut component_rng(seed, "insdel-pi2", 0));
    let z: Vec<bool> = {
        let mut rng = component_rng(seed, "insdel-z", 0);
        (0..n * n).map(|_| rng.random_bool(0.5)).collect()
    };
    // Public filler everywhere, the private bits embedded top-left.
    let mut embedded: Vec<bool> = {
        let mut rng = component_rng(seed, "insdel-filler", 0);
        (0..n * n).map(|_| rng.random_bool(0.5)).collect()
    };
    for i in 0..root {
        for jj in 0..root {
            embedded[i * n + jj] = x[i * root + jj];
        }
    }
    let y: Vec<bool> = embedded
        .iter()
        .zip(&z)
        .map(|(&e, &m)| e ^ m)
        .collect();

    // Encoder: one edge per cell, row-major.
    let mut events: Vec<StreamEvent> = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for jj in 0..n {
            let (u, v) = cell_edge(&pi1, &pi2, n, i, jj, y[i * n + jj]);
            events.push(StreamEvent::insert(u, v));
        }
    }

    // Decoder: clear the quadrant below-right of the queried cell except
    // the two diagonals.
    let on_diag1 = |i: usize, jj: usize| i >= i_star && jj >= j_star && i - i_star == jj - j_star;
    let on_diag2 =
        |i: usize, jj: usize| i > i_star && jj >= j_star && i - i_star == jj - j_star + 1;
    for i in i_star..n {
        for jj in j_star..n {
            if on_diag1(i, jj) || on_diag2(i, jj) {
                continue;
            }
            let (u, v) = cell_edge(&pi1, &pi2, n, i, jj, y[i * n + jj]);
            events.push(StreamEvent::delete(u, v));
        }
    }

    // Re-insert the opposite copy along the second diagonal.
    let len2 = (n - 1 - i_star).min(n - j_star);
    for k in 0..len2 {
        let (i, jj) = (i_star + 1 + k, j_star + k);
        let (u, v) = cell_edge(&pi1, &pi2, n, i, jj, !y[i * n + jj]);
        events.push(StreamEvent::insert(u, v));
    }

    let stream = EventStream::new(3 * n, false, events);
    let graph = stream.apply().expect("deletions target live edges");

    // Planted structure.
    let len1 = n - i_star.max(j_star);
    let m_edges: Vec<(usize, usize)> = (0..len1)
        .map(|k| {
            let (i, jj) = (i_star + k, j_star + k);
            cell_edge(&pi1, &pi2, n, i, jj, y[i * n + jj])
        })
        .collect();
    let n1_edges: Vec<(usize, usize)> = (0..len2)
        .map(|k| cell_edge(&pi1, &pi2, n, i_star + 1 + k, j_star + k, false))
        .collect();
    let n2_edges: Vec<(usize, usize)> = (0..len2)
        .map(|k| cell_edge(&pi1, &pi2, n, i_star + 1 + k, j_star + k, true))
        .collect();
    let special_b1 = cell_edge(&pi1, &pi2, n, i_star, j_star, false);
    let special_b2 = cell_edge(&pi1, &pi2, n, i_star, j_star, true);

    // Zigzag witness: a(i*) via its own edge to the queried cell's copy,
    // across to the next row by the second diagonal, and so on.
    // Each hop to the next row uses the second diagonal, which always runs
    // at least `len1 − 1` cells.
    let mut witness_vertices: Vec<usize> = Vec::with_capacity(2 * len1);
    for &(a, b) in &m_edges {
        witness_vertices.push(a);
        witness_vertices.push(b);
    }
    let witness = PathWitness::new(witness_vertices);

    let inst = InsDelInstance {
        graph,
        stream,
        n,
        bits,
        root,
        x: x.to_vec(),
        j,
        i_star,
        j_star,
        pi1,
        pi2,
        z,
        y,
        m_edges,
        n1_edges,
        n2_edges,
        special_b1,
        special_b2,
        witness,
    };
    debug_assert!(inst.graph.validate_path(&inst.witness).is_ok());
    Ok(inst)
}

/// Read the planted bit off a path: which copy of the queried cell's edge
/// it contains, un-masked.  `None` when the path misses the edge or is not
/// a path of the instance graph.
pub fn decode_insdel(inst: &InsDelInstance, path: &PathWitness) -> Option<bool> {
    inst.graph.validate_path(path).ok()?;
    let edges: HashSet<(usize, usize)> = path.edges().map(sorted).collect();
    let mask = inst.z[inst.i_star * inst.n + inst.j_star];
    match (
        edges.contains(&sorted(inst.special_b1)),
        edges.contains(&sorted(inst.special_b2)),
    ) {
        (true, false) => Some(mask),
        (false, true) => Some(!mask),
        _ => None,
    }
}

fn sorted((u, v): (usize, usize)) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// The survivors spanned by the planted vertices are exactly the planted
/// edges: no foreign edge joins the diagonal chain.
pub fn verify_induced_planted(inst: &InsDelInstance) -> bool {
    let mut keep: HashSet<usize> = inst.m_edges.iter().map(|&(a, _)| a).collect();
    keep.extend(inst.n1_edges.iter().map(|&(_, b)| b));
    keep.extend(inst.n2_edges.iter().map(|&(_, b)| b));
    let planted: HashSet<(usize, usize)> = inst
        .m_edges
        .iter()
        .chain(&inst.n1_edges)
        .chain(&inst.n2_edges)
        .copied()
        .map(sorted)
        .collect();
    for &(u, v) in inst.graph.edges() {
        if keep.contains(&u) && keep.contains(&v) && !planted.contains(&sorted((u, v))) {
            return false;
        }
    }
    // Every planted edge inside the span is present in the graph.
    planted
        .iter()
        .filter(|&&(u, v)| keep.contains(&u) && keep.contains(&v))
        .all(|&(u, v)| inst.graph.has_edge(u, v))
}

/// Structural length bound: any simple path has at most
/// `6·√bits + 4 + 2·|path ∩ M|` edges, `M` being the surviving diagonal.
pub fn insdel_bound_holds(inst: &InsDelInstance, path: &PathWitness) -> bool {
    if inst.graph.validate_path(path).is_err() {
        return false;
    }
    let m: HashSet<(usize, usize)> = inst.m_edges.iter().copied().map(sorted).collect();
    let overlap = path
        .edges()
        .filter(|&e| m.contains(&sorted(e)))
        .count();
    path.len() <= 6 * inst.root + 4 + 2 * overlap
}
