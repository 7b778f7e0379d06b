use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use heis_core::fixtures::{example_g0, example_g1};
use heis_core::parallel::{default_workers, Execution};
use heis_core::spectral::{sweep_with, SweepConfig};
use heis_core::linear_element;

fn sweep_paths(c: &mut Criterion) {
    let f = linear_element(&example_g1(), &example_g0()).unwrap();
    let config = SweepConfig { q_max: 24, grid_s: 4, grid_t: 4, probes: vec![], ..Default::default() };
    let mut group = c.benchmark_group("sweep_q24_4x4");
    group.sample_size(10);
    group.bench_function(BenchmarkId::new("sequential", 1), |b| {
        b.iter(|| sweep_with(&f, &config, Execution::Sequential).unwrap())
    });
    let workers = default_workers().max(2);
    group.bench_function(BenchmarkId::new("parallel", workers), |b| {
        b.iter(|| sweep_with(&f, &config, Execution::with_workers(workers)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, sweep_paths);
criterion_main!(benches);
