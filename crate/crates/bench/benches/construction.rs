use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use orthoconf::algebra::charpoly;
use orthoconf::mixed::build_slice;
use orthoconf::spectral::omega_tilde_matrix;
use orthoconf::{build_irrep, ConformalModule, Rat, Series, WeightVec};

fn weight(s: Series, mu: &str) -> WeightVec {
    WeightVec::parse(s, mu).unwrap()
}

fn irreps(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_irrep");
    for (s, mu) in [(Series::D, "2,0"), (Series::B, "1,1"), (Series::D, "1,1,0")] {
        let w = weight(s, mu);
        g.bench_function(format!("{s} ({mu})"), |b| b.iter(|| build_irrep(black_box(&w)).unwrap()));
    }
    g.finish();
}

fn slices(c: &mut Criterion) {
    let m = ConformalModule::new(build_irrep(&weight(Series::D, "1,0")).unwrap(), Rat::new(1.into(), 3.into())).unwrap();
    let mut g = c.benchmark_group("build_slice");
    for k in [1, 3] {
        g.bench_function(format!("D (1,0) k={k}"), |b| b.iter(|| build_slice(black_box(&m), k).unwrap()));
    }
    g.bench_function("phi D (1,0) k=3", |b| b.iter(|| m.phi(black_box(3)).unwrap()));
    g.finish();
}

fn charpolys(c: &mut Criterion) {
    let mut g = c.benchmark_group("charpoly");
    for (s, mu) in [(Series::D, "1,0"), (Series::B, "1/2,1/2"), (Series::D, "1,1,0")] {
        let wt = omega_tilde_matrix(&build_irrep(&weight(s, mu)).unwrap()).unwrap();
        g.bench_function(format!("{s} ({mu})"), |b| b.iter(|| charpoly(black_box(&wt.matrix)).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, irreps, slices, charpolys);
criterion_main!(benches);
