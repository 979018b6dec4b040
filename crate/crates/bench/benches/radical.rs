use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use motcalc_bench::{extension_motive, torus_motive};
use motcalc_core::liestruct::{build_e, verify_lie_module};
use motcalc_core::onemotive::gr;
use motcalc_core::radical::unipotent_radical;

fn radical(c: &mut Criterion) {
    let mut group = c.benchmark_group("unipotent_radical");
    for (r, s) in [(1, 1), (2, 2), (3, 3)] {
        let m = extension_motive(r, s);
        group.bench_with_input(BenchmarkId::new("extension", format!("{r}x{s}")), &m, |b, m| {
            b.iter(|| unipotent_radical(black_box(m), None).unwrap())
        });
        let t = torus_motive(r, s + 1);
        group.bench_with_input(BenchmarkId::new("torus", format!("{r}x{}", s + 1)), &t, |b, m| {
            b.iter(|| unipotent_radical(black_box(m), None).unwrap())
        });
    }
    group.finish();
}

fn lie_check(c: &mut Criterion) {
    let pieces = gr(&extension_motive(3, 3));
    let e = build_e(&pieces).unwrap();
    c.bench_function("verify_lie_module 3x3", |b| {
        b.iter(|| verify_lie_module(black_box(&e), black_box(&pieces)))
    });
}

criterion_group!(benches, radical, lie_check);
criterion_main!(benches);
