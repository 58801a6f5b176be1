//! Parallel versus sequential sweep throughput for the coherence verifier
//! and the partition sampler.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use collar::sample::{map_indices, map_indices_seq, sample_rng, uniform_simplex_point};
use collar::{partition_g, verify_coherence, verify_coherence_seq};

fn bench_coherence(c: &mut Criterion) {
    let mut group = c.benchmark_group("coherence_sweep");
    group.sample_size(10);
    for &samples in &[32usize, 128] {
        group.bench_with_input(
            BenchmarkId::new("parallel", samples),
            &samples,
            |b, &samples| {
                b.iter(|| {
                    verify_coherence(0b001, 0b011, 0b111, black_box(samples), 64, 42).unwrap()
                })
            },
        );
        group.bench_with_input(
            BenchmarkId::new("sequential", samples),
            &samples,
            |b, &samples| {
                b.iter(|| {
                    verify_coherence_seq(0b001, 0b011, 0b111, black_box(samples), 64, 42).unwrap()
                })
            },
        );
    }
    group.finish();
}

fn bench_partition_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("partition_sweep");
    let sweep = |n: u64, seq: bool| -> f64 {
        let worst = |idx: u64| {
            let mut rng = sample_rng(7, idx);
            let x = uniform_simplex_point(&mut rng, 4, 0b1111);
            let g = partition_g(&x).unwrap();
            (g.iter().sum::<f64>() - 1.0).abs()
        };
        let devs = if seq {
            map_indices_seq(n, worst)
        } else {
            map_indices(n, worst)
        };
        devs.into_iter().fold(0.0, f64::max)
    };
    group.bench_function("parallel/4096", |b| b.iter(|| sweep(black_box(4096), false)));
    group.bench_function("sequential/4096", |b| b.iter(|| sweep(black_box(4096), true)));
    group.finish();
}

criterion_group!(benches, bench_coherence, bench_partition_sweep);
criterion_main!(benches);
