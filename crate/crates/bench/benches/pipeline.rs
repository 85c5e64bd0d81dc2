use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use finsler_bench::{counterexample_geometry, counterexample_points, preset};
use finsler_core::autodiff::{jet_of, Squared};
use finsler_core::distributions::{coincide, cyclic_sum_check, isotropy_check};
use finsler_core::{parse, Tolerances};

fn parsing(c: &mut Criterion) {
    let src = "sqrt(y1^2+y2^2+y3^2)/(1+(0.25)*(x1^2+x2^2+x3^2)) + abs(y1*y2)^3/2";
    c.bench_function("parse", |b| b.iter(|| parse(black_box(src), 3).unwrap()));
}

fn jets(c: &mut Criterion) {
    let f = preset("paper-counterexample");
    let f2 = Squared(f.expression());
    let (x, y) = (vec![0.1, -0.2, 1.3], vec![1.1, 0.7, -1.4]);
    let mut group = c.benchmark_group("jet_of_f2");
    for order in [0, 2, 4] {
        group.bench_function(format!("order_{order}"), |b| {
            b.iter(|| jet_of(&f2, black_box(&x), black_box(&y), order).unwrap())
        });
    }
    group.finish();
}

fn geometry(c: &mut Criterion) {
    let mut group = c.benchmark_group("geometry");
    for name in ["paper-counterexample", "riemann-constant-curvature"] {
        let f = preset(name);
        let points = counterexample_points(16);
        let mut i = 0;
        group.bench_function(name, |b| {
            b.iter_batched(
                || {
                    i = (i + 1) % points.len();
                    points[i].clone()
                },
                |(x, y)| f.at(x, y).unwrap(),
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

fn distributions(c: &mut Criterion) {
    let geo = counterexample_geometry();
    let tol = Tolerances::default();
    c.bench_function("coincide", |b| b.iter(|| coincide(black_box(&geo), &tol)));
    c.bench_function("conditions", |b| {
        b.iter(|| {
            (
                cyclic_sum_check(black_box(&geo), &tol),
                isotropy_check(black_box(&geo), &tol),
            )
        })
    });
}

criterion_group!(benches, parsing, jets, geometry, distributions);
criterion_main!(benches);
