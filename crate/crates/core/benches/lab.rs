use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rearrange_core::cost::CostScheme;
use rearrange_core::lab::{self, LabConfig};
use rearrange_core::reductions::Theorem;

fn configs() -> [(&'static str, LabConfig); 2] {
    [("sequential", LabConfig::sequential()), ("parallel", LabConfig::default())]
}

fn delta_bounds(c: &mut Criterion) {
    let mut group = c.benchmark_group("delta-signed n<=5");
    for (label, cfg) in configs() {
        group.bench_with_input(BenchmarkId::from_parameter(label), &cfg, |b, cfg| {
            b.iter(|| lab::verify_delta_bounds_signed(cfg, 5).unwrap())
        });
    }
    group.finish();
}

fn lower_bounds(c: &mut Criterion) {
    let weighted = CostScheme::weighted_samples();
    let frag = CostScheme::fragmentation_samples();
    let mut group = c.benchmark_group("lower-bounds n<=4");
    group.sample_size(10);
    for (label, cfg) in configs() {
        group.bench_with_input(BenchmarkId::from_parameter(label), &cfg, |b, cfg| {
            b.iter(|| lab::verify_lower_bounds(cfg, 3, 4, &weighted, &frag).unwrap())
        });
    }
    group.finish();
}

fn reduction(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduction fwst n<=5");
    group.sample_size(10);
    for (label, cfg) in configs() {
        group.bench_with_input(BenchmarkId::from_parameter(label), &cfg, |b, cfg| {
            b.iter(|| lab::verify_reduction(cfg, Theorem::Fwst, 5, 5).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, delta_bounds, lower_bounds, reduction);
criterion_main!(benches);
