use criterion::{black_box, criterion_group, criterion_main, Criterion};
use dtvol_core::{cone_volume, geometric_branch, poly_roots, riley_zpoly, Complex64, KnotParam};

fn zpoly(c: &mut Criterion) {
    let m = Complex64::from_polar(1.0, 0.6);
    let mut g = c.benchmark_group("riley_zpoly");
    for (k, n) in [(3u32, 2i64), (9, 5), (19, 10)] {
        g.bench_function(format!("J({k},{})", 2 * n), |b| {
            b.iter(|| riley_zpoly(black_box(k), black_box(n), m).unwrap())
        });
    }
    g.finish();
}

fn roots(c: &mut Criterion) {
    let m = Complex64::from_polar(1.0, 0.6);
    let mut g = c.benchmark_group("poly_roots");
    for (k, n) in [(3u32, 2i64), (9, 5), (19, 10)] {
        let p = riley_zpoly(k, n, m).unwrap();
        g.bench_function(format!("degree {}", p.degree().unwrap()), |b| {
            b.iter(|| poly_roots(black_box(&p)).unwrap())
        });
    }
    g.finish();
}

fn branch_and_volume(c: &mut Criterion) {
    let mut g = c.benchmark_group("pipeline");
    g.sample_size(10);
    for (k, n) in [(2i64, -1i64), (5, -2), (9, 5)] {
        let knot = KnotParam::new(k, n).unwrap();
        g.bench_function(format!("branch {knot}"), |b| {
            b.iter(|| geometric_branch(&knot, 0.1, 0.005).unwrap())
        });
        g.bench_function(format!("volume {knot}"), |b| {
            b.iter(|| cone_volume(&knot, 1e-4, 1e-9).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, zpoly, roots, branch_and_volume);
criterion_main!(benches);
