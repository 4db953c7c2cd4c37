use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use obsent::entanglement::{amplitude_factorization, analyze, is_ab_entangled};
use obsent::hilbert::ToleranceConfig;
use obsent::qprob::conditional_table;
use obsent::random::{
    random_commuting_dichotomous_pair, random_hermitian, random_state, random_unitary, seeded_rng,
};
use obsent::spectral::{joint_decompose, Observable};

fn bench_spectral_decompose(c: &mut Criterion) {
    let tol = ToleranceConfig::default();
    let mut group = c.benchmark_group("spectral_decompose");
    for dim in [4, 8, 16, 32] {
        let mut rng = seeded_rng(1);
        let h = random_hermitian(dim, &mut rng);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &h, |b, h| {
            b.iter(|| Observable::from_matrix(black_box(h), &tol).unwrap())
        });
    }
    group.finish();
}

fn bench_joint_decompose(c: &mut Criterion) {
    let tol = ToleranceConfig::default();
    let mut group = c.benchmark_group("joint_decompose");
    for dim in [4, 8, 16] {
        let mut rng = seeded_rng(2);
        let (a, b) = random_commuting_dichotomous_pair(dim, &mut rng, &tol);
        let psi = random_state(dim, &mut rng, &tol);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &dim, |bench, _| {
            bench.iter(|| joint_decompose(black_box(&a), &b, &psi, &tol).unwrap())
        });
    }
    group.finish();
}

fn bench_entanglement_pipeline(c: &mut Criterion) {
    let tol = ToleranceConfig::default();
    let mut rng = seeded_rng(3);
    let (a, b) = random_commuting_dichotomous_pair(8, &mut rng, &tol);
    let psi = random_state(8, &mut rng, &tol);

    c.bench_function("is_ab_entangled/8", |bench| {
        bench.iter(|| is_ab_entangled(black_box(&a), &b, &psi, &tol).unwrap())
    });
    c.bench_function("amplitude_factorization/8", |bench| {
        bench.iter(|| amplitude_factorization(black_box(&a), &b, &psi, &tol).unwrap())
    });
    c.bench_function("conditional_table/8", |bench| {
        bench.iter(|| conditional_table(black_box(&a), &b, &psi, &tol).unwrap())
    });
    c.bench_function("analyze/8", |bench| {
        bench.iter(|| analyze(black_box(&a), &b, &psi, &tol).unwrap())
    });
}

fn bench_random_unitary(c: &mut Criterion) {
    let mut group = c.benchmark_group("random_unitary");
    for dim in [4, 16] {
        group.bench_with_input(BenchmarkId::from_parameter(dim), &dim, |bench, &dim| {
            let mut rng = seeded_rng(4);
            bench.iter(|| random_unitary(black_box(dim), &mut rng))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_spectral_decompose,
    bench_joint_decompose,
    bench_entanglement_pipeline,
    bench_random_unitary
);
criterion_main!(benches);
