use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use paramword::degrees::{enumerate_canonical_types_with, realized_type_oracle, CensusConfig, Strategy};
use paramword::encoding::WordKind;
use paramword::gr::{verify_gr, GrParams};

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for (name, strategy) in [("slices", Strategy::Slices), ("filtered", Strategy::Filtered)] {
        let config = CensusConfig { strategy, ..CensusConfig::default() };
        group.bench_function(format!("graph-pairs/{name}"), |b| {
            b.iter(|| enumerate_canonical_types_with(WordKind::Graph, black_box(2), &config).unwrap().total())
        });
    }
    group.bench_function("graph-pairs/oracle-cap5", |b| {
        b.iter(|| realized_type_oracle(WordKind::Graph, black_box(2), 5).unwrap().len())
    });
    group.finish();
}

fn graham_rothschild(c: &mut Criterion) {
    let mut group = c.benchmark_group("gr");
    group.sample_size(10);
    group.bench_function("verify/1012-N2", |b| {
        b.iter(|| verify_gr(black_box(GrParams { sigma: 1, k: 0, n: 1, r: 2 }), 2).unwrap().holds())
    });
    group.bench_function("verify/2012-N3", |b| {
        b.iter(|| verify_gr(black_box(GrParams { sigma: 2, k: 0, n: 1, r: 2 }), 3).unwrap().holds())
    });
    group.finish();
}

criterion_group!(benches, census, graham_rothschild);
criterion_main!(benches);
