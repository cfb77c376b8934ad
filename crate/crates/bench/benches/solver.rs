use afrelay_core::replica::{self, solve_saddle};
use afrelay_core::{ChannelConfig, CovarianceSpec};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn saddle_point(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_saddle");
    for n in [4, 8, 16, 32] {
        let config = ChannelConfig::symmetric(n, 1.0, 1.0)
            .unwrap()
            .with_all_covariances(CovarianceSpec::Exponential(0.5));
        let cov = config.covariances().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| solve_saddle(black_box(&config), black_box(&cov)).unwrap())
        });
    }
    group.finish();
}

fn full_evaluation(c: &mut Criterion) {
    let mut group = c.benchmark_group("evaluate");
    for n in [4, 16] {
        let config = ChannelConfig::symmetric(n, 10.0, 1.0)
            .unwrap()
            .with_all_covariances(CovarianceSpec::Exponential(0.5));
        let cov = config.covariances().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| replica::evaluate(black_box(&config), black_box(&cov)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, saddle_point, full_evaluation);
criterion_main!(benches);
