use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qrc_core::catastrophe::{lattice, relocalization_scan, tilt_scan};
use qrc_core::parallel::Execution;
use qrc_core::spectrum::SolverConfig;

fn modes() -> Vec<(&'static str, Execution)> {
    let mut m = vec![("sequential", Execution::Sequential)];
    if Execution::parallel_available() {
        m.push(("parallel", Execution::Parallel));
    }
    m
}

fn relocalization(c: &mut Criterion) {
    let mut group = c.benchmark_group("relocalization_scan");
    group.sample_size(10);
    let cfg = SolverConfig::with_step(1.0, 9.0, 0.01, 1);
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::new(name, 11), &exec, |b, &exec| {
            b.iter(|| relocalization_scan(4.0, (0.0, 0.005), 11, &cfg, exec).unwrap())
        });
    }
    group.finish();
}

fn cusp(c: &mut Criterion) {
    let mut group = c.benchmark_group("tilt_scan");
    group.sample_size(10);
    let cfg = SolverConfig::with_step(1.0, 5.0, 0.01, 1);
    let tilts = lattice(-0.5, 0.5, 21);
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::new(name, tilts.len()), &exec, |b, &exec| {
            b.iter(|| tilt_scan(-2.0, &tilts, &cfg, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, relocalization, cusp);
criterion_main!(benches);
