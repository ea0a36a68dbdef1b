//! Instance-generator cost for the four hard-instance families.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use longpath_bench::random_bits;
use longpath_core::instances::{rs_matching, slp_witness_path};
use longpath_core::{gen_dlp, gen_insdel_reduction, gen_slp, gen_undirected_reduction};

fn slp(c: &mut Criterion) {
    c.bench_function("gen-slp/r=2000", |b| {
        b.iter(|| gen_slp(black_box(2_000), 1))
    });
    let inst = gen_slp(2_000, 1);
    c.bench_function("slp-witness/r=2000", |b| {
        b.iter(|| slp_witness_path(black_box(&inst)))
    });
}

fn dlp(c: &mut Criterion) {
    let rs = rs_matching(200, 150).unwrap();
    c.bench_function("gen-dlp/side=200/r=150", |b| {
        b.iter(|| gen_dlp(black_box(&rs), 3).unwrap())
    });
}

fn undirected(c: &mut Criterion) {
    let rs = rs_matching(40, 30).unwrap();
    let x = random_bits(30, 4);
    c.bench_function("gen-undir/side=40/r=30/ell=6", |b| {
        b.iter(|| gen_undirected_reduction(black_box(&rs), &x, 12, 6, 5).unwrap())
    });
}

fn insdel(c: &mut Criterion) {
    let x = random_bits(100, 6);
    c.bench_function("gen-insdel/n=60/bits=100", |b| {
        b.iter(|| gen_insdel_reduction(black_box(&x), 60, 42, 7).unwrap())
    });
}

criterion_group!(benches, slp, dlp, undirected, insdel);
criterion_main!(benches);
