use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use orange_bench::fixtures;
use orange_core::projection::Orange;
use orange_core::{orange_dim_formula, spline_dim, CofactorSystem};

fn cofactor_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("spline_dim");
    group.sample_size(10);
    for (name, complex, d) in fixtures() {
        group.bench_with_input(BenchmarkId::new(name, d), &complex, |b, cx| b.iter(|| spline_dim(cx, 1, d).unwrap()));
    }
    group.finish();
}

fn formula_side(c: &mut Criterion) {
    let mut group = c.benchmark_group("orange_dim_formula");
    group.sample_size(10);
    for (name, complex, d) in fixtures() {
        let orange = Orange::analyze(&complex).unwrap();
        group.bench_with_input(BenchmarkId::new(name, d), &orange, |b, o| {
            b.iter(|| orange_dim_formula(o, 1, d).unwrap())
        });
    }
    group.finish();
}

fn elimination(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    group.sample_size(10);
    for (name, complex, d) in fixtures() {
        let system = CofactorSystem::assemble(&complex, 1, d).unwrap();
        group.bench_with_input(BenchmarkId::new(format!("{name}/sparse"), d), &system, |b, s| {
            b.iter(|| s.matrix.rank())
        });
    }
    group.finish();
}

criterion_group!(benches, cofactor_oracle, formula_side, elimination);
criterion_main!(benches);
