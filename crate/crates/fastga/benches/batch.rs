//! Scheduling benchmarks: the rayon-parallel batch executor against the
//! sequential fallback, on workloads small enough to iterate.

use criterion::{criterion_group, criterion_main, Criterion};

use fastga::harness::{
    run_experiment, run_experiment_sequential, AlgorithmSpec, ExperimentConfig, ProblemKind,
    UPolicy,
};

fn onemax_batch() -> ExperimentConfig {
    ExperimentConfig::new(
        AlgorithmSpec::OllgaFast {
            beta: 2.5,
            u: UPolicy::N,
        },
        ProblemKind::OneMax,
        vec![2048],
        16,
        99,
    )
}

fn maxsat_batch() -> ExperimentConfig {
    ExperimentConfig::new(
        AlgorithmSpec::OllgaFast {
            beta: 2.5,
            u: UPolicy::N,
        },
        ProblemKind::MaxSat,
        vec![256],
        16,
        99,
    )
}

fn bench_batches(c: &mut Criterion) {
    let mut group = c.benchmark_group("onemax-fast-ga-batch");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| run_experiment(&onemax_batch()).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| run_experiment_sequential(&onemax_batch()).unwrap())
    });
    group.finish();

    let mut group = c.benchmark_group("maxsat-fast-ga-batch");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| run_experiment(&maxsat_batch()).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| run_experiment_sequential(&maxsat_batch()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_batches);
criterion_main!(benches);
