use std::hint::black_box;

use abvar_core::fourier::FourierTransform;
use abvar_core::ledger::{resolve, Assumptions};
use abvar_core::random::{self, trial_rng};
use abvar_core::{CohClass, Variety};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn wedge(c: &mut Criterion) {
    let mut group = c.benchmark_group("wedge");
    for d in [6, 12] {
        let mut rng = trial_rng(1, d as u64);
        let a = random::element(&mut rng, d);
        let b = random::element(&mut rng, d);
        group.bench_with_input(BenchmarkId::from_parameter(d), &(a, b), |bench, (a, b)| {
            bench.iter(|| black_box(a).wedge(black_box(b)).unwrap())
        });
    }
    group.finish();
}

fn inversion_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("inversion_sweep");
    group.sample_size(10);
    for n in [2, 3] {
        let x = Variety::abelian("X", n);
        let basis = CohClass::all_basis(&x);
        group.bench_with_input(BenchmarkId::from_parameter(n), &x, |bench, x| {
            bench.iter(|| {
                let there = FourierTransform::new(x);
                let back = FourierTransform::new(&x.dual());
                for a in &basis {
                    black_box(back.apply(&there.apply(a).unwrap()).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn ledger(c: &mut Criterion) {
    let mut group = c.benchmark_group("ledger_resolve");
    for n in [3, 4] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, &n| {
            bench.iter(|| resolve(black_box(n), Assumptions::NONE).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, wedge, inversion_sweep, ledger);
criterion_main!(benches);
