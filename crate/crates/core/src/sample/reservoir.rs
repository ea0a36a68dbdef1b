//! Reservoir sampling over insertion-only streams.
//!
//! Classic Algorithm R: slot `i < k` takes item `i`, after which item `i`
//! replaces a uniform slot with probability `k/(i+1)`.  The reservoir is a
//! uniform k-subset of the items seen, using O(k) space and one uniform
//! draw per item.

use rand_chacha::ChaCha12Rng;

use crate::rng;
use crate::sample::{EdgeSample, SampleError};
use crate::stream::{EventStream, StreamOp};

use rand::Rng;

/// Streaming state of one reservoir pass.
#[derive(Debug, Clone)]
pub struct ReservoirSampler {
    capacity: usize,
    seen: usize,
    slots: Vec<(usize, usize)>,
    rng: ChaCha12Rng,
}

impl ReservoirSampler {
    pub fn new(capacity: usize, seed: u64) -> Self {
        ReservoirSampler {
            capacity,
            seen: 0,
            slots: Vec::with_capacity(capacity.min(1 << 20)),
            rng: rng::component_rng(seed, "reservoir", 0),
        }
    }

    pub fn push(&mut self, edge: (usize, usize)) {
        if self.capacity == 0 {
            self.seen += 1;
            return;
        }
        if self.seen < self.capacity {
            self.slots.push(edge);
        } else {
            let j = self.rng.random_range(0..=self.seen);
            if j < self.capacity {
                self.slots[j] = edge;
            }
        }
        self.seen += 1;
    }

    pub fn seen(&self) -> usize {
        self.seen
    }

    /// The sampled edges, deduplicated and sorted.
    pub fn into_edges(self) -> Vec<(usize, usize)> {
        let mut edges = self.slots;
        edges.sort_unstable();
        edges.dedup();
        edges
    }
}

/// Sample up to `k` distinct edges from an insertion-only stream.
///
/// When the stream carries each edge once (the insertion-only graph-stream
/// model), the result is a uniform k-subset of its edges; a stream with
/// fewer than `k` edges is returned in full.  Deletion events are a model
/// violation and fail with their event index.
pub fn reservoir_sample(
    stream: &EventStream,
    k: usize,
    seed: u64,
) -> Result<EdgeSample, SampleError> {
    let mut state = ReservoirSampler::new(k, seed);
    for (index, ev) in stream.events.iter().enumerate() {
        match ev.op {
            StreamOp::Insert => {
                let (u, v) = ev.edge;
                let edge = if stream.directed || u < v { (u, v) } else { (v, u) };
                state.push(edge);
            }
            StreamOp::Delete => return Err(SampleError::DeletionInReservoir { index }),
        }
    }
    Ok(EdgeSample::new(
        stream.n,
        stream.directed,
        state.into_edges(),
        k,
    ))
}
