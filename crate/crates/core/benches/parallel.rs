//! Parallel-vs-sequential comparisons on the workloads with data-parallel
//! inner loops: pair-table verification, 1-factorization checks, the
//! exhaustive searches, and the full chain build.
//!
//! With the default `parallel` feature the dispatching entry points fan out
//! via rayon; the `*_seq` functions are the same algorithms run serially.
//! Building the bench with `--no-default-features` measures the pure
//! sequential fallback, where both sides coincide.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use steiner_core::*;

fn chain_result(n_target: u32) -> TripleSystem {
    let options = ChainOptions {
        verify: false,
        ..ChainOptions::default()
    };
    build_chain_with(n_target, &options)
        .unwrap()
        .pop()
        .unwrap()
        .result
}

fn bench_verify_sts(c: &mut Criterion) {
    let system = chain_result(9);
    let mut group = c.benchmark_group("verify_sts_order_505");
    group.bench_function("dispatch", |b| {
        b.iter(|| black_box(verify_sts(black_box(&system))))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(verify_sts_seq(black_box(&system))))
    });
    group.bench_function("merge_oracle", |b| {
        b.iter(|| black_box(verify_sts_merge(black_box(&system))))
    });
    group.finish();
}

fn bench_verify_factorization(c: &mut Criterion) {
    let fact = difference_factorization(10);
    let mut group = c.benchmark_group("verify_factorization_k1024");
    group.bench_function("dispatch", |b| {
        b.iter(|| black_box(verify_factorization(black_box(&fact))))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(verify_factorization_seq(black_box(&fact))))
    });
    group.finish();
}

fn bench_max_independent(c: &mut Criterion) {
    // the order-15 system reached by plain doubling from order 3
    let sts3 = TripleSystem::new(3, vec![[0, 1, 2]]).unwrap();
    let sts7 = double_plus_one(
        &sts3,
        &circle_method_factorization(4).unwrap(),
        &[0, 1, 2],
    )
    .unwrap();
    let sts15 = double_plus_one(
        &sts7,
        &circle_method_factorization(8).unwrap(),
        &[0, 1, 2, 3, 4, 5, 6],
    )
    .unwrap();

    let mut group = c.benchmark_group("max_independent_order_15");
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(max_independent_brute(black_box(&sts15), 15).unwrap()))
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel_split", |b| {
        b.iter(|| black_box(max_independent_brute_par(black_box(&sts15), 15).unwrap()))
    });
    group.finish();
}

fn bench_upper_chromatic(c: &mut Criterion) {
    let seed = seed_sts9();
    let mut group = c.benchmark_group("upper_chromatic_order_9");
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(upper_chromatic_brute(black_box(&seed.system), 9).unwrap()))
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel_split", |b| {
        b.iter(|| black_box(upper_chromatic_brute_par(black_box(&seed.system), 9).unwrap()))
    });
    group.finish();
}

fn bench_chain(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_chain");
    group.sample_size(20);
    group.bench_function("construct_to_505", |b| {
        let options = ChainOptions {
            verify: false,
            ..ChainOptions::default()
        };
        b.iter(|| black_box(build_chain_with(9, &options).unwrap()))
    });
    group.bench_function("construct_and_verify_to_505", |b| {
        b.iter(|| black_box(build_chain(9).unwrap()))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_verify_sts,
    bench_verify_factorization,
    bench_max_independent,
    bench_upper_chromatic,
    bench_chain
);
criterion_main!(benches);
