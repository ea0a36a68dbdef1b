//! Path extraction: degree-core peeling, greedy extension, exact search, and
//! the end-to-end streaming runners that tie samplers to extraction.

use thiserror::Error;

use crate::graph::{GraphError, PathViolation};
use crate::sample::SampleError;
use crate::stream::StreamError;

mod exact;
mod greedy;
mod peel;
mod stream_run;

pub use exact::{
    enumerate_simple_paths, exact_longest_path, ENUMERATION_VERTEX_LIMIT,
};
pub use greedy::{greedy_extend, greedy_extend_bidirectional};
pub use peel::{peel_core, CoreResult};
pub use stream_run::{
    extract_path_from_sample, hybrid_run, run_semi_streaming, run_semi_streaming_with_sampler,
    ExtractMode, RunMode, RunReport, SamplerChoice, SamplerKind, DEFAULT_NODE_BUDGET, SKETCH_DELTA,
};

/// Errors from path extraction and the streaming runners.
#[derive(Debug, Error)]
pub enum PathError {
    /// Peeling needs at least one edge to define its threshold.
    #[error("graph has no edges to peel")]
    EmptyGraph,
    /// Exhaustive search was cut off before completing.
    #[error("exact search exceeded its node budget of {budget}")]
    BudgetExceeded { budget: u64 },
    /// Path enumeration is only feasible on small graphs.
    #[error("path enumeration is limited to {limit} vertices, graph has {n}")]
    EnumerationTooLarge { n: usize, limit: usize },
    #[error("start vertex {start} out of range for {n} vertices")]
    StartOutOfRange { start: usize, n: usize },
    /// Core-verify extraction peels the true input graph, which therefore
    /// has to be supplied alongside the sample.
    #[error("core-verify extraction requires the full input graph")]
    MissingOracle,
    /// An extracted path failed validation against the input graph; this
    /// indicates a bug and is checked defensively.
    #[error("extracted path violates the input graph: {0:?}")]
    Witness(PathViolation),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error(transparent)]
    Stream(#[from] StreamError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
