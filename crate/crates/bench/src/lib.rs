//! Shared fixtures for the benchmark targets: seeded graphs and event
//! streams of the sizes the benches exercise.

use rand::Rng;

use longpath_core::rng::component_rng;
use longpath_core::{gnp, EventStream, Graph, OrderPolicy, StreamEvent};

/// Sparse random graph with expected average degree `avg_degree`.
pub fn sparse_graph(n: usize, avg_degree: f64, seed: u64) -> Graph {
    let p = avg_degree / (n.saturating_sub(1).max(1) as f64);
    gnp(n, p.min(1.0), seed).expect("probability is clamped into range")
}

/// Insertion-only stream carrying a sparse random graph in random order.
pub fn insertion_stream(n: usize, avg_degree: f64, seed: u64) -> EventStream {
    let g = sparse_graph(n, avg_degree, seed);
    EventStream::from_graph(&g, OrderPolicy::Random(seed))
}

/// Insertion/deletion churn over `events` steps: each step either inserts a
/// fresh random edge or deletes one inserted earlier.
pub fn churn_stream(n: usize, events: usize, seed: u64) -> EventStream {
    let mut rng = component_rng(seed, "bench-churn", 0);
    let mut present: Vec<(usize, usize)> = Vec::new();
    let mut evs = Vec::with_capacity(events);
    while evs.len() < events {
        if present.is_empty() || rng.random_bool(0.5) {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u == v {
                continue;
            }
            let e = (u.min(v), u.max(v));
            evs.push(StreamEvent::insert(e.0, e.1));
            present.push(e);
        } else {
            let i = rng.random_range(0..present.len());
            let e = present.swap_remove(i);
            evs.push(StreamEvent::delete(e.0, e.1));
        }
    }
    EventStream::new(n, false, evs)
}

/// Uniform random bit string, for the communication-game generators.
pub fn random_bits(len: usize, seed: u64) -> Vec<bool> {
    let mut rng = component_rng(seed, "bench-bits", 0);
    (0..len).map(|_| rng.random_bool(0.5)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_the_requested_shape() {
        let s = insertion_stream(100, 8.0, 1);
        assert_eq!(s.n, 100);
        assert!(!s.has_deletions());
        let c = churn_stream(50, 400, 2);
        assert_eq!(c.events.len(), 400);
        assert!(c.has_deletions());
        assert_eq!(random_bits(64, 3).len(), 64);
    }
}
