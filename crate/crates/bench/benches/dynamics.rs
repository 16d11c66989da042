use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use susy_qubit::scenario::{preset, PRESET_NAMES};
use susy_qubit::{Complex64, SeedBasis, Superpotential};

fn driving(c: &mut Criterion) {
    let mut group = c.benchmark_group("driving_1000_points");
    for name in PRESET_NAMES {
        let params = preset(name).unwrap().params;
        let closed = Superpotential::new(params);
        let seed = SeedBasis::for_params(&params).unwrap();
        group.bench_with_input(BenchmarkId::new("closed_form", name), &closed, |b, sp| {
            b.iter(|| {
                (0..1000)
                    .map(|i| sp.eval(black_box(i as f64 * 0.05)).unwrap().f)
                    .sum::<Complex64>()
            })
        });
        group.bench_with_input(BenchmarkId::new("seed", name), &seed, |b, seed| {
            b.iter(|| {
                (0..1000)
                    .map(|i| seed.eval_f(black_box(i as f64 * 0.05)).unwrap())
                    .sum::<Complex64>()
            })
        });
    }
    group.finish();
}

fn trajectories(c: &mut Criterion) {
    let mut group = c.benchmark_group("trajectory_default_grid");
    group.sample_size(10);
    for name in PRESET_NAMES {
        let scenario = preset(name).unwrap();
        group.bench_with_input(BenchmarkId::new("analytic", name), &scenario, |b, s| {
            b.iter(|| s.analytic_trajectory().unwrap())
        });
        group.bench_with_input(BenchmarkId::new("rk4", name), &scenario, |b, s| {
            b.iter(|| s.rk4_trajectory().unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, driving, trajectories);
criterion_main!(benches);
