use criterion::{criterion_group, criterion_main, Criterion};
use fakemu::euler::{accelerated_product, extremal_constants, AccelerationPlan, ProductCase};
use fakemu::builtin;

fn euler(c: &mut Criterion) {
    let spec = builtin("fake_min").unwrap();
    let mut group = c.benchmark_group("euler");
    group.sample_size(20);
    for (label, bound) in [("P=1e5", 100_000), ("P=1e6", 1_000_000)] {
        let plan = AccelerationPlan::new(9, bound);
        group.bench_function(label, |b| b.iter(|| accelerated_product(&spec, ProductCase::Apparent, &plan).unwrap()));
    }
    group.bench_function("extremal_constants", |b| b.iter(|| extremal_constants().unwrap()));
    group.finish();
}

criterion_group!(benches, euler);
criterion_main!(benches);
