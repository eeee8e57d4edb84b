use criterion::{black_box, criterion_group, criterion_main, Criterion};

use cgw_bench::points;
use cgw_core::kernel::{det_sum_at, kernel_at, sum_matrix, symbolic_det};
use cgw_core::rep::{check_relations, Representation};
use cgw_core::specht::degree_list;
use cgw_core::{LValue, RationalFunction};

fn field(c: &mut Criterion) {
    let a: RationalFunction = "(l*r^3 - 2*r + 1)/(l^2 - r^5)".parse().unwrap();
    let b: RationalFunction = "(r^2 - 1)/(l*r + 3)".parse().unwrap();
    c.bench_function("ratfn mul+add", |bch| bch.iter(|| black_box(&(&a * &b) + &a)));
}

fn representation(c: &mut Criterion) {
    c.bench_function("build generic rank 6", |b| b.iter(|| Representation::generic(black_box(6)).unwrap()));
    let rep = Representation::generic(5).unwrap();
    c.bench_function("relations rank 5", |b| b.iter(|| check_relations(black_box(&rep))));
}

fn determinants(c: &mut Criterion) {
    let mut g = c.benchmark_group("det");
    g.sample_size(10);
    let s4 = sum_matrix(&Representation::generic(4).unwrap());
    g.bench_function("symbolic rank 4", |b| b.iter(|| symbolic_det(black_box(&s4)).unwrap()));
    let (l, r) = points(7, 1).remove(0);
    g.bench_function("rank 7 at a point", |b| b.iter(|| det_sum_at(7, black_box(&l), black_box(&r)).unwrap()));
    g.finish();
}

fn kernels(c: &mut Criterion) {
    let mut g = c.benchmark_group("kernel");
    g.sample_size(10);
    for l in ["r^3", "r^-9"] {
        let lv: LValue = l.parse().unwrap();
        g.bench_function(format!("rank 6 at l = {l}"), |b| b.iter(|| kernel_at(6, black_box(&lv)).unwrap()));
    }
    g.finish();
}

fn combinatorics(c: &mut Criterion) {
    c.bench_function("degree list rank 12", |b| b.iter(|| degree_list(black_box(12), None)));
}

criterion_group!(benches, field, representation, determinants, kernels, combinatorics);
criterion_main!(benches);
