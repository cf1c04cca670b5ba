use criterion::{criterion_group, criterion_main, Criterion};
use pcea_bench::{random_problems, rules, small_problem};
use pcea_core::{allocate, compute_lambda};
use std::hint::black_box;

fn allocate_small(c: &mut Criterion) {
    let p = small_problem();
    let mut group = c.benchmark_group("allocate_small");
    for rule in rules() {
        group.bench_function(rule.label(), |b| b.iter(|| allocate(black_box(&rule), black_box(&p)).unwrap()));
    }
    group.finish();
}

fn allocate_random(c: &mut Criterion) {
    let problems = random_problems(1, 100);
    let mut group = c.benchmark_group("allocate_random_100");
    for rule in rules() {
        group.bench_function(rule.label(), |b| {
            b.iter(|| problems.iter().map(|p| allocate(&rule, p).unwrap().awards().len()).sum::<usize>())
        });
    }
    group.finish();
}

fn lambda(c: &mut Criterion) {
    let problems = random_problems(2, 100);
    c.bench_function("compute_lambda_random_100", |b| {
        b.iter(|| problems.iter().map(|p| compute_lambda(black_box(p)).value).count())
    });
}

criterion_group!(benches, allocate_small, allocate_random, lambda);
criterion_main!(benches);
