//! One-pass edge samplers.
//!
//! Two samplers share the [`EdgeSample`] output type: reservoir sampling
//! for insertion-only streams ([`reservoir_sample`]) and a linear-sketch
//! sampler for insertion-deletion streams ([`sample_support_turnstile`]).
//! Both are deterministic functions of `(stream, k, seed)`.

mod l0;
mod reservoir;

pub use l0::{sample_support_turnstile, L0Query, L0Sketch};
pub(crate) use l0::sample_support_turnstile_stats;
pub use reservoir::{reservoir_sample, ReservoirSampler};

use thiserror::Error;

use crate::stream::StreamError;

#[derive(Debug, Error)]
pub enum SampleError {
    #[error("event {index}: reservoir sampling requires an insertion-only stream")]
    DeletionInReservoir { index: usize },
    #[error(transparent)]
    Stream(#[from] StreamError),
}

/// A set of distinct edges drawn from a stream.
///
/// `achieved` always equals `edges.len()`; it can fall short of `target`
/// when the stream holds fewer distinct edges than requested (or, for the
/// sketch sampler, when individual sketches fail and are rejected).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSample {
    pub n: usize,
    pub directed: bool,
    /// Sorted distinct edges (normalized for undirected streams).
    pub edges: Vec<(usize, usize)>,
    pub target: usize,
    pub achieved: usize,
}

impl EdgeSample {
    pub fn new(n: usize, directed: bool, mut edges: Vec<(usize, usize)>, target: usize) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let achieved = edges.len();
        EdgeSample {
            n,
            directed,
            edges,
            target,
            achieved,
        }
    }
}

/// The default sample size `ceil(constant * n * ln n)`; the streaming path
/// guarantee is stated for `constant = 10`.
pub fn recommended_sample_size(n: usize, constant: f64) -> usize {
    if n <= 1 {
        return 1;
    }
    (constant * n as f64 * (n as f64).ln()).ceil() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_size_matches_frozen_values() {
        // ceil(10 * n * ln n) at the default experiment scale.
        assert_eq!(recommended_sample_size(1000, 10.0), 69078);
        assert_eq!(recommended_sample_size(200, 10.0), 10597);
        assert_eq!(recommended_sample_size(1, 10.0), 1);
    }
}
