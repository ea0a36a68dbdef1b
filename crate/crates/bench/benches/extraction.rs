//! Path-extraction cost: core peeling, greedy growth, the exact solver at
//! its practical size, and the end-to-end streaming run.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use longpath_bench::{insertion_stream, sparse_graph};
use longpath_core::path::greedy_extend_bidirectional;
use longpath_core::{exact_longest_path, peel_core, planted_path, run_semi_streaming, ExtractMode};

fn peel(c: &mut Criterion) {
    let g = sparse_graph(3_000, 12.0, 5);
    c.bench_function("peel-core/n=3000/avg-deg=12", |b| {
        b.iter(|| peel_core(black_box(&g)).unwrap())
    });
}

fn greedy(c: &mut Criterion) {
    let g = sparse_graph(3_000, 12.0, 5);
    c.bench_function("greedy-bidirectional/n=3000", |b| {
        b.iter(|| greedy_extend_bidirectional(black_box(&g), None, 0, None).unwrap())
    });
}

fn exact_small(c: &mut Criterion) {
    let g = planted_path(16, 24, 2).unwrap();
    c.bench_function("exact/n=16/m=24", |b| {
        b.iter(|| exact_longest_path(black_box(&g), 100_000_000).unwrap())
    });
}

fn streaming_run(c: &mut Criterion) {
    let stream = insertion_stream(1_000, 20.0, 9);
    c.bench_function("run/heuristic/n=1000/10k-events", |b| {
        b.iter(|| {
            run_semi_streaming(black_box(&stream), None, ExtractMode::Heuristic, 17, 1_000_000)
                .unwrap()
        })
    });
}

criterion_group!(benches, peel, greedy, exact_small, streaming_run);
criterion_main!(benches);
