use afrelay_core::simulate::{mutual_information_sample, run_monte_carlo, ChannelSampler};
use afrelay_core::{ChannelConfig, CovarianceSpec, MonteCarloOptions, SeededRng};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use std::hint::black_box;

fn single_realization(c: &mut Criterion) {
    let mut group = c.benchmark_group("mutual_information_sample");
    for n in [4, 8, 16] {
        let config = ChannelConfig::symmetric(n, 1.0, 1.0)
            .unwrap()
            .with_all_covariances(CovarianceSpec::Exponential(0.5));
        let cov = config.covariances().unwrap();
        let sampler = ChannelSampler::new(&config, &cov).unwrap();
        let mut rng = SeededRng::new(0, 0).rng();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| {
                let sample = sampler.sample(&mut rng);
                mutual_information_sample(black_box(&config), &sample).unwrap()
            })
        });
    }
    group.finish();
}

fn batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_monte_carlo");
    group.sample_size(20);
    let opts = MonteCarloOptions::new(1024, 7);
    group.throughput(Throughput::Elements(opts.samples as u64));
    for n in [4, 8] {
        let config = ChannelConfig::symmetric(n, 1.0, 1.0).unwrap();
        let cov = config.covariances().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| run_monte_carlo(black_box(&config), &cov, &opts).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, single_realization, batch);
criterion_main!(benches);
