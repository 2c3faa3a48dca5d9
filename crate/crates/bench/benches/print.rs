use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use frontier_pp::workloads::{generate, Family};
use frontier_pp::{print, Quadratic, ResolverConfig};

fn families(c: &mut Criterion) {
    let cases = [
        (Family::Concat, 10_000),
        (Family::FillSep, 2_000),
        (Family::Flatten, 2_000),
        (Family::SexpFull, 10),
        (Family::RandFit, 2_000),
        (Family::RandOver, 2_000),
        (Family::Json, 2_000),
    ];
    let cfg = ResolverConfig::new(Quadratic { page_width: 80 });
    let mut group = c.benchmark_group("print");
    group.sample_size(10);
    for (family, size) in cases {
        let w = generate(family, size, 0, 80).expect("valid size");
        group.bench_with_input(BenchmarkId::new(family.as_str(), size), &w, |b, w| {
            b.iter(|| print(&w.arena, w.doc, &cfg).expect("has a layout"))
        });
    }
    group.finish();
}

fn flatten_scaling(c: &mut Criterion) {
    let cfg = ResolverConfig::new(Quadratic { page_width: 80 });
    let mut group = c.benchmark_group("flatten");
    group.sample_size(10);
    for size in [1_000, 2_000, 4_000, 8_000] {
        let w = generate(Family::Flatten, size, 0, 80).expect("valid size");
        group.bench_with_input(BenchmarkId::from_parameter(size), &w, |b, w| {
            b.iter(|| print(&w.arena, w.doc, &cfg).expect("has a layout"))
        });
    }
    group.finish();
}

criterion_group!(benches, families, flatten_scaling);
criterion_main!(benches);
