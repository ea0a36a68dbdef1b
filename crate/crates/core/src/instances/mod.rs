//! Hard-instance generators and verifiers.
//!
//! Four related constructions around induced matchings in bipartite graphs:
//! a directed twin gadget driven by a random permutation ([`gen_slp`]), its
//! embedding into a Ruzsa–Szemerédi graph ([`gen_dlp`]), an undirected
//! gateway-path construction that ties a planted matching to a recoverable
//! bit vector ([`gen_undirected_reduction`]), and an insertion-deletion
//! construction that carves an induced matching out of a complete bipartite
//! pattern ([`gen_insdel_reduction`]).  Each generator records its planted
//! structure so verifiers can replay streams, check structural lemmas on
//! enumerated paths, and round-trip the hidden bits.

use thiserror::Error;

use crate::graph::GraphError;

mod dlp;
mod insdel;
mod perm;
mod rs;
mod slp;
mod undirected;

pub use dlp::{dlp_witness_path, gen_dlp, verify_trimmed_path, DlpInstance, TrimViolation};
pub use insdel::{
    gen_insdel_reduction, decode_insdel, insdel_bound_holds, verify_induced_planted,
    InsDelInstance,
};
pub use perm::{longest_cycle, PermError, Permutation};
pub use rs::{decompose_rs, rs_matching, verify_rs_decomposition, RsGraph, RsViolation};
pub use slp::{
    gen_slp, slp_exact_lp, slp_from_parts, slp_graph_lp, slp_witness_path, SlpInstance,
};
pub use undirected::{
    decode_undirected, gen_undirected_reduction, undirected_bound_holds, UndirInstance,
};

/// Errors from instance generation.
#[derive(Debug, Error)]
pub enum InstanceError {
    /// The gateway construction needs subdivisions of length at least 4 for
    /// its length bound to hold.
    #[error("subdivision length {ell} is below the minimum of 4")]
    SubdivisionTooShort { ell: usize },
    /// The bit vector must match the instance dimensions.
    #[error("bit vector has length {got}, expected {expected}")]
    BitLengthMismatch { expected: usize, got: usize },
    /// The planted index must address a bit.
    #[error("index {j} out of range for {n} bits")]
    IndexOutOfRange { j: usize, n: usize },
    /// The embedded submatrix side is the square root of the bit count.
    #[error("bit count {n} is not a perfect square")]
    NotASquare { n: usize },
    /// The bipartite side must fit the embedded submatrix.
    #[error("side {side} cannot hold a {need}×{need} submatrix")]
    SideTooSmall { side: usize, need: usize },
    /// The gateway path needs at least one vertex outside the planted
    /// matching on each side.
    #[error("matching of size {r} saturates side {side}; no gateway vertices remain")]
    NoGatewayVertices { side: usize, r: usize },
    #[error("invalid matching decomposition: {0}")]
    Rs(#[from] RsViolation),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
