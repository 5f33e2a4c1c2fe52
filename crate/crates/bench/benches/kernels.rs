use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use spwidth_core::sampling::{gaussian_polynomial, sample_rng};
use spwidth_core::{
    averaged_modulus, best_approximation, generalized_modulus, inf_quantity, Exponent, ModulusGrid, ShapeFunction,
    WeightMeasure,
};

fn modulus(c: &mut Criterion) {
    let grid = ModulusGrid::default();
    let p = Exponent::new(2.0).unwrap();
    let phi = ShapeFunction::phi_alpha(1.5).unwrap();
    let mut group = c.benchmark_group("generalized_modulus");
    for order in [8u64, 64] {
        let f = gaussian_polynomial(&mut sample_rng(1, order), order);
        group.bench_with_input(BenchmarkId::from_parameter(order), &f, |b, f| {
            b.iter(|| generalized_modulus(black_box(f), p, &phi, 0.5, &grid))
        });
    }
    group.finish();
}

fn averaged(c: &mut Criterion) {
    let grid = ModulusGrid::default();
    let p = Exponent::new(2.0).unwrap();
    let phi = ShapeFunction::phi_alpha(1.0).unwrap();
    let f = gaussian_polynomial(&mut sample_rng(2, 0), 16);
    let mut group = c.benchmark_group("averaged_modulus");
    group.sample_size(20);
    for (name, mu) in [("mu1", WeightMeasure::mu1(PI).unwrap()), ("mu2", WeightMeasure::mu2(0.75 * PI).unwrap())] {
        group.bench_function(name, |b| b.iter(|| averaged_modulus(black_box(&f), p, &phi, &mu, mu.tau() / 4.0, &grid)));
    }
    group.finish();
}

fn infimum(c: &mut Criterion) {
    let p = Exponent::new(2.0).unwrap();
    let phi = ShapeFunction::phi_alpha(1.0).unwrap();
    let mu = WeightMeasure::mu2(0.75 * PI).unwrap();
    let mut group = c.benchmark_group("inf_quantity");
    group.sample_size(10);
    for k_max in [64u64, 256] {
        group.bench_with_input(BenchmarkId::from_parameter(k_max), &k_max, |b, &k_max| {
            b.iter(|| inf_quantity(black_box(1), &phi, p, &mu, k_max))
        });
    }
    group.finish();
}

fn tail_norm(c: &mut Criterion) {
    let p = Exponent::new(1.5).unwrap();
    let f = gaussian_polynomial(&mut sample_rng(3, 0), 4096);
    c.bench_function("best_approximation/4096", |b| b.iter(|| best_approximation(black_box(&f), p, 100)));
}

criterion_group!(benches, modulus, averaged, infimum, tail_norm);
criterion_main!(benches);
