use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nomafair::{beta_exact, lambert_w0, noma_more_fair, noma_rates, oma_rates};
use nomafair_bench::{channel, gamma_grid};
use std::hint::black_box;

fn lambert(c: &mut Criterion) {
    let xs = gamma_grid(64);
    c.bench_function("lambert_w0/grid64", |b| {
        b.iter(|| {
            xs.iter()
                .map(|&x| lambert_w0(black_box(x)).unwrap())
                .sum::<f64>()
        })
    });
}

fn threshold(c: &mut Criterion) {
    let gammas = gamma_grid(64);
    c.bench_function("beta_exact/grid64", |b| {
        b.iter(|| {
            gammas
                .iter()
                .map(|&g| beta_exact(black_box(g)).unwrap())
                .sum::<f64>()
        })
    });
    let pair = channel(2);
    c.bench_function("noma_more_fair/pair", |b| {
        b.iter(|| noma_more_fair(black_box(&pair)).unwrap())
    });
}

fn rates(c: &mut Criterion) {
    let mut group = c.benchmark_group("rates");
    for k in [2, 8, 64] {
        let ch = channel(k);
        group.bench_with_input(BenchmarkId::new("noma", k), &ch, |b, ch| {
            b.iter(|| noma_rates(ch))
        });
        group.bench_with_input(BenchmarkId::new("oma", k), &ch, |b, ch| {
            b.iter(|| oma_rates(ch))
        });
    }
    group.finish();
}

criterion_group!(benches, lambert, threshold, rates);
criterion_main!(benches);
