use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use crossint_bench::generators::{gen_katona, gen_lines, gen_powerset, gen_uniform};
use crossint_bench::{beta, ell, max_product_exact, max_sum_exact};

fn bench_ell(c: &mut Criterion) {
    let mut g = c.benchmark_group("ell");
    for n in [5, 6, 7] {
        let f = gen_powerset(n).unwrap();
        g.bench_with_input(BenchmarkId::new("powerset_t1", n), &f, |b, f| b.iter(|| ell(black_box(f), 1).unwrap()));
    }
    let k = gen_katona(8, 2).unwrap();
    g.bench_function("katona_8_2", |b| b.iter(|| ell(black_box(&k), 2).unwrap()));
    g.finish();
}

fn bench_beta(c: &mut Criterion) {
    let mut g = c.benchmark_group("beta");
    g.sample_size(10);
    for n in [3, 4] {
        let f = gen_powerset(n).unwrap();
        g.bench_with_input(BenchmarkId::new("powerset_t1", n), &f, |b, f| b.iter(|| beta(black_box(f), 1).unwrap()));
    }
    let f = gen_uniform(6, 3).unwrap();
    g.bench_function("uniform_6_3", |b| b.iter(|| beta(black_box(&f), 1).unwrap()));
    g.finish();
}

fn bench_cross(c: &mut Criterion) {
    let mut g = c.benchmark_group("cross");
    g.sample_size(10);
    let f = gen_powerset(3).unwrap();
    for k in [2, 3, 4] {
        g.bench_with_input(BenchmarkId::new("sum_powerset3", k), &k, |b, &k| b.iter(|| max_sum_exact(black_box(&f), 1, k).unwrap()));
    }
    for (p, k) in [(3, 2), (4, 3)] {
        let f = gen_lines(p, 1, None, None).unwrap();
        g.bench_function(BenchmarkId::new("product_lines", format!("p{p}_k{k}")), |b| {
            b.iter(|| max_product_exact(black_box(&f), 1, k).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench_ell, bench_beta, bench_cross);
criterion_main!(benches);
