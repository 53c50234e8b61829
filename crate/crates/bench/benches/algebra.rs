use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use flopalg::derived::{act, Category, GroupoidWord};
use flopalg::fdrep::{ar_quiver, lambda_con, NODE_CAP};
use flopalg::nccr::{default_max_degree, lambda_n, lambda_n_presentation, HomComplex};
use flopalg::{Field, GradedAlgebra, Matrix};

fn bench_rank(c: &mut Criterion) {
    let f = Field::prime(101).unwrap();
    let m = Matrix::from_i64(f, &(0..20).map(|i| (0..20).map(|j| (i * j + i + 3 * j) % 7).collect()).collect::<Vec<_>>());
    c.bench_function("rank_20x20_f101", |b| b.iter(|| black_box(&m).rank()));
}

fn bench_graded(c: &mut Criterion) {
    let pres = lambda_n_presentation(3).unwrap();
    c.bench_function("graded_components_lambda3_deg22", |b| {
        b.iter(|| GradedAlgebra::new(black_box(pres.clone()), Field::Rational, 22).unwrap())
    });
}

fn bench_hom_complex(c: &mut Criterion) {
    let lam = lambda_n(2, Field::prime(3).unwrap(), default_max_degree(2)).unwrap();
    let r = Arc::new(lam.simple_resolution(1).unwrap().direct_sum(&lam.simple_resolution(2).unwrap()));
    c.bench_function("hom_complex_cohomology_n2", |b| {
        b.iter(|| {
            let mut h = HomComplex::new(&lam, r.clone(), r.clone());
            (0..=3).map(|p| h.cohomology(p, 2 * p).unwrap()).sum::<usize>()
        })
    });
}

fn bench_knitting(c: &mut Criterion) {
    let a = lambda_con(4, Field::Rational).unwrap();
    c.bench_function("knit_lambda_con_4", |b| b.iter(|| ar_quiver(black_box(&a), NODE_CAP).unwrap().len()));
}

fn bench_act(c: &mut Criterion) {
    let cat = Category::new(Field::prime(5).unwrap()).unwrap();
    let s1 = cat.module("S1").unwrap();
    let w = GroupoidWord::parse("a^2 b^-2 a^2").unwrap();
    c.bench_function("act_pure_braid_len6_on_s1", |b| b.iter(|| act(&cat, black_box(&w), &s1).unwrap()));
}

criterion_group!(benches, bench_rank, bench_graded, bench_hom_complex, bench_knitting, bench_act);
criterion_main!(benches);
