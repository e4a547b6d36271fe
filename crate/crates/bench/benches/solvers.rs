use banzhaf_core::solvers::run;
use banzhaf_core::workload::{rng, GameFamily};
use banzhaf_core::{Algorithm, SolverOptions};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn distinct_sums(c: &mut Criterion) {
    let family = GameFamily::DistinctSums { bits: 40 };
    let opts = SolverOptions::default();
    let mut group = c.benchmark_group("distinct-sums");
    group.sample_size(10);
    for n in [16usize, 20, 24, 28] {
        let game = family.game(n, &mut rng(n as u64));
        group.bench_with_input(BenchmarkId::new("partition", n), &game, |b, g| {
            b.iter(|| run(black_box(g), Algorithm::Partition, &opts).unwrap())
        });
        if n <= 20 {
            group.bench_with_input(BenchmarkId::new("gf-list", n), &game, |b, g| {
                b.iter(|| run(black_box(g), Algorithm::GfList, &opts).unwrap())
            });
            group.bench_with_input(BenchmarkId::new("naive", n), &game, |b, g| {
                b.iter(|| run(black_box(g), Algorithm::Naive, &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn dense_weights(c: &mut Criterion) {
    let family = GameFamily::DenseWeights { max_weight: 500 };
    let opts = SolverOptions::default();
    let mut group = c.benchmark_group("dense-weights");
    group.sample_size(10);
    for n in [50usize, 100, 200] {
        let game = family.game(n, &mut rng(n as u64));
        for alg in [Algorithm::GfTable, Algorithm::GfList, Algorithm::Partition] {
            group.bench_with_input(BenchmarkId::new(alg.name(), n), &game, |b, g| {
                b.iter(|| run(black_box(g), alg, &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn options(c: &mut Criterion) {
    let game = GameFamily::DistinctSums { bits: 40 }.game(24, &mut rng(24));
    let mut group = c.benchmark_group("partition-options");
    group.sample_size(10);
    for opts in SolverOptions::default().flag_combinations() {
        let id =
            format!("truncate={}/share={}/memo={}", opts.truncate_at_quota, opts.share_windows, opts.memoize_by_weight);
        group.bench_function(id, |b| b.iter(|| run(black_box(&game), Algorithm::Partition, &opts).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, distinct_sums, dense_weights, options);
criterion_main!(benches);
