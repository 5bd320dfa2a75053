//! Benchmarks of the hot paths: norm evaluation, error profiles, democracy
//! tables, and the witness construction.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use greedylab::classes::{ClassKind, ClassParams};
use greedylab::democracy::{constant_estimate, democracy_table, ConstantKind};
use greedylab::errors::{error_profile, ErrorOpts};
use greedylab::spaces::SpaceDescriptor;
use greedylab::verify::witness_nondemocracy;
use greedylab::weights::Weight;
use greedylab_bench::{random_vector, spaces};
use std::hint::black_box;

fn bench_norms(c: &mut Criterion) {
    let mut group = c.benchmark_group("norm");
    for (name, space) in spaces() {
        let f = random_vector(7, 64);
        group.bench_with_input(BenchmarkId::from_parameter(name), &space, |b, s| {
            b.iter(|| black_box(s.norm(&f)));
        });
    }
    group.finish();
}

fn bench_error_profile(c: &mut Criterion) {
    let mut group = c.benchmark_group("error_profile_supp8");
    let opts = ErrorOpts::default();
    for (name, space) in spaces() {
        let f = random_vector(11, 8);
        group.bench_with_input(BenchmarkId::from_parameter(name), &space, |b, s| {
            b.iter(|| black_box(error_profile(s, &f, f.support_len(), &opts).unwrap()));
        });
    }
    group.finish();
}

fn bench_class_norm(c: &mut Criterion) {
    let space = SpaceDescriptor::interleaved_sum(1.0, 2.0).unwrap();
    let params = ClassParams::new(Weight::power(0.25), 2.0);
    let f = random_vector(13, 16);
    let opts = ErrorOpts::default();
    c.bench_function("class_norm_interleaved_supp16", |b| {
        b.iter(|| {
            black_box(
                greedylab::classes::class_norm(&space, &f, &params, ClassKind::Greedy, &opts)
                    .unwrap(),
            )
        });
    });
}

fn bench_democracy(c: &mut Criterion) {
    c.bench_function("democracy_table_summing_n16", |b| {
        b.iter(|| black_box(democracy_table(&SpaceDescriptor::summing_c0(), 16, 1 << 14, 1)));
    });
    c.bench_function("quasi_greedy_estimate_summing_n32", |b| {
        b.iter(|| {
            black_box(constant_estimate(
                &SpaceDescriptor::summing_c0(),
                ConstantKind::QuasiGreedy,
                32,
                500,
                1,
            ))
        });
    });
}

fn bench_witness(c: &mut Criterion) {
    let space = SpaceDescriptor::interleaved_sum(1.0, 2.0).unwrap();
    c.bench_function("witness_nondemocracy_k2", |b| {
        b.iter(|| {
            black_box(witness_nondemocracy(&space, &Weight::power(0.25), 2.0, 2, 1e-6).unwrap())
        });
    });
}

criterion_group!(
    benches,
    bench_norms,
    bench_error_profile,
    bench_class_norm,
    bench_democracy,
    bench_witness
);
criterion_main!(benches);
