use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rimforge::*;

fn coset_enumeration(c: &mut Criterion) {
    let icosahedral = parse_presentation("<r,s,t | r^2, s^3, t^5, r*s*t>").unwrap();
    let big = parse_presentation("<x,y | x^2 = y^3, y^3 = (x*y)^5>").unwrap();
    let mut g = c.benchmark_group("enumerate");
    g.bench_function("binary_icosahedral_120", |b| {
        b.iter(|| enumerate(black_box(&icosahedral), &[], DEFAULT_MAX_COSETS).unwrap())
    });
    g.sample_size(20);
    g.bench_function("order_2280", |b| b.iter(|| enumerate(black_box(&big), &[], DEFAULT_MAX_COSETS).unwrap()));
    g.finish();
}

fn alexander_family(c: &mut Criterion) {
    let j = parse_knot("torus(3,5)").unwrap();
    let mut g = c.benchmark_group("alexander");
    for n in [1usize, 3, 5] {
        let k = KnotSpec::jn(&j, n);
        g.bench_function(format!("jn_torus35_{n}"), |b| b.iter(|| alexander_polynomial(black_box(&k)).unwrap()));
    }
    g.finish();
}

fn schreier(c: &mut Criterion) {
    let budget = Budget::default();
    let mut g = c.benchmark_group("reidemeister_schreier");
    for (src, d) in [("trefoil", 3u64), ("torus(3,5)", 2), ("torus(2,5)", 3)] {
        let wg = wirtinger(&parse_knot(src).unwrap()).unwrap();
        g.bench_function(format!("{src}_d{d}"), |b| {
            b.iter(|| reidemeister_schreier(black_box(&wg.presentation), d, &wg.degrees(), &budget.tietze()).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, coset_enumeration, alexander_family, schreier);
criterion_main!(benches);
