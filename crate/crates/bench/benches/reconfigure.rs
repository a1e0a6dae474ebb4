use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use hampath_bench::{canonical_pair, walked_path};
use hampath_core::oracle::build_hp_graph;
use hampath_core::reconfig::reconfigure_with;
use hampath_core::{enumerate_simple, reconfig_to_canonical, CheckLevel, GridDims};

fn canonical_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonical_ns_to_ew");
    for n in [11, 21, 41, 81] {
        let (ns, ew) = canonical_pair(n);
        group.throughput(Throughput::Elements((n * n) as u64));
        group.bench_with_input(BenchmarkId::new("local", n), &n, |b, _| {
            b.iter(|| reconfigure_with(black_box(&ns), black_box(&ew), CheckLevel::Local).unwrap())
        });
        if n <= 21 {
            group.bench_with_input(BenchmarkId::new("full", n), &n, |b, _| {
                b.iter(|| {
                    reconfigure_with(black_box(&ns), black_box(&ew), CheckLevel::Full).unwrap()
                })
            });
        }
    }
    group.finish();
}

fn to_canonical(c: &mut Criterion) {
    let mut group = c.benchmark_group("to_canonical");
    for (m, n) in [(9, 9), (15, 17)] {
        let p = walked_path(m, n, 4 * m * n);
        group.bench_function(format!("{m}x{n}"), |b| {
            b.iter(|| reconfig_to_canonical(black_box(&p)).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    let d = GridDims::new(5, 6).unwrap();
    group.bench_function("enumerate_simple_5x6", |b| {
        b.iter(|| enumerate_simple(black_box(d)).unwrap())
    });
    let d = GridDims::new(5, 5).unwrap();
    group.bench_function("build_hp_graph_5x5", |b| {
        b.iter(|| build_hp_graph(black_box(d)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, canonical_sweep, to_canonical, oracle);
criterion_main!(benches);
