use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use dga_core::algebra::{DGAlgebra, DGBimodule, PointedBimodule};
use dga_core::free::free_functor_checked;
use dga_core::hochschild::{bar_augmentation_check, hh_groups};
use dga_core::theorems::semifree_pi0;
use dga_core::{suite, CutoffPolicy, FieldSpec, Window};

const Q: FieldSpec = FieldSpec::Rationals;

fn hochschild(c: &mut Criterion) {
    let eps = Arc::new(DGAlgebra::dual_numbers(Q));
    let reg = DGBimodule::regular(&eps);
    c.bench_function("hh dual numbers [0,4]", |b| {
        b.iter(|| hh_groups(&eps, &reg, 0, 4, CutoffPolicy::default()).unwrap())
    });
    let x2 = suite::free_one(Q, 2);
    let reg = DGBimodule::regular(&x2);
    c.bench_function("hh k<x2> [-2,2]", |b| {
        b.iter(|| hh_groups(&x2, &reg, -2, 2, CutoffPolicy::default()).unwrap())
    });
}

fn bar(c: &mut Criterion) {
    let pairs = suite::bar_pairs(Q).unwrap();
    c.bench_function("bar augmentation, all pairs", |b| {
        b.iter(|| {
            for (_, r, s) in &pairs {
                black_box(bar_augmentation_check(r, s, Window::new(-4, 2), CutoffPolicy::default()).unwrap());
            }
        })
    });
}

fn free_functor(c: &mut Criterion) {
    let su = Arc::new(DGAlgebra::square_zero_class(Q, -1));
    let x = PointedBimodule::from_algebra(&su);
    c.bench_function("F(k+Su) length 6", |b| {
        b.iter(|| free_functor_checked(&x, 6, Window::new(-1, 0), true).unwrap())
    });
}

fn pi0(c: &mut Criterion) {
    let su = DGAlgebra::square_zero_class(Q, -1);
    c.bench_function("semifree pi_0 k+Su", |b| b.iter(|| semifree_pi0(&su, true, 4, true).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = hochschild, bar, free_functor, pi0
}
criterion_main!(benches);
