use criterion::{black_box, criterion_group, criterion_main, Criterion, Throughput};
use wprime::lambert_w::BRANCH_POINT;
use wprime::{w0, wm1};

fn principal(c: &mut Criterion) {
    let xs: Vec<f64> = (0..1_000)
        .map(|k| BRANCH_POINT + 10f64.powf(-12.0 + 24.0 * k as f64 / 999.0))
        .collect();
    let mut g = c.benchmark_group("w0");
    g.throughput(Throughput::Elements(xs.len() as u64));
    g.bench_function("log_spaced_1000", |b| {
        b.iter(|| {
            for &x in &xs {
                black_box(w0(black_box(x)).unwrap());
            }
        })
    });
    g.finish();
}

fn lower(c: &mut Criterion) {
    let xs: Vec<f64> = (0..1_000)
        .map(|k| -(10f64.powf(-12.0 + 11.5 * k as f64 / 999.0)).min(-BRANCH_POINT))
        .collect();
    let mut g = c.benchmark_group("wm1");
    g.throughput(Throughput::Elements(xs.len() as u64));
    g.bench_function("log_spaced_1000", |b| {
        b.iter(|| {
            for &x in &xs {
                black_box(wm1(black_box(x)).unwrap());
            }
        })
    });
    g.finish();
}

criterion_group!(benches, principal, lower);
criterion_main!(benches);
