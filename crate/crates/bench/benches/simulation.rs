use criterion::{criterion_group, criterion_main, Criterion};
use nomafair::experiments::{run_distribution, run_fairness_sweep};
use nomafair_bench::small_sim;

fn sweep(c: &mut Criterion) {
    let cfg = small_sim(1000);
    let grid = [0.0, 20.0, 40.0];
    let mut group = c.benchmark_group("sweep");
    group.sample_size(20);
    for threads in [1, 4] {
        group.bench_function(format!("3x1000/threads{threads}"), |b| {
            b.iter(|| run_fairness_sweep(&cfg, &grid, threads).unwrap())
        });
    }
    group.finish();
}

fn distribution(c: &mut Criterion) {
    let cfg = small_sim(20);
    let mut group = c.benchmark_group("distribution");
    group.sample_size(20);
    group.bench_function("20drops/threads1", |b| {
        b.iter(|| run_distribution(&cfg, 1).unwrap())
    });
    group.finish();
}

criterion_group!(benches, sweep, distribution);
criterion_main!(benches);
