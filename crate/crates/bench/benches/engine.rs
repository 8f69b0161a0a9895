use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use semireg_core::ffield::FieldSpec;
use semireg_core::groups::{build_group, Family};
use semireg_core::permeng::ElementTable;
use semireg_core::verify::{verify_suzuki_partition, verify_vigh_claim};

fn field(c: &mut Criterion) {
    let f = FieldSpec::of_order(729).unwrap();
    let xs: Vec<_> = f.nonzero_elements().collect();
    c.bench_function("gf729 mul+inv sweep", |b| {
        b.iter(|| {
            let mut acc = f.one();
            for &x in &xs {
                acc = f.mul(acc, f.inv(x).unwrap());
            }
            black_box(acc)
        })
    });
}

fn groups(c: &mut Criterion) {
    let mut g = c.benchmark_group("schreier-sims");
    g.sample_size(10);
    for (family, n) in [(Family::Psl2, 13), (Family::Psu3, 5), (Family::Sz, 8), (Family::Ree, 3)] {
        g.bench_function(format!("{family}({n})"), |b| b.iter(|| build_group(family, black_box(n)).unwrap()));
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let sz = build_group(Family::Sz, 8).unwrap();
    let mut g = c.benchmark_group("enumeration");
    g.sample_size(10);
    g.bench_function("Sz(8) element table", |b| b.iter(|| ElementTable::new(sz.perm_group()).unwrap()));
    g.bench_function("Sz(8) partition check", |b| b.iter(|| verify_suzuki_partition(8).unwrap()));
    g.finish();
}

fn claim(c: &mut Criterion) {
    c.bench_function("claim u<=4 v<=12", |b| b.iter(|| verify_vigh_claim(4, 12)));
}

criterion_group!(benches, field, groups, enumeration, claim);
criterion_main!(benches);
