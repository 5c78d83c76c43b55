//! Throughput of the hot engines: field multiplication, the defining
//! Weil sum against its closed form, c-DDT and c-BCT row sweeps, and the
//! per-multiplier classification pass behind the closed c-BCT entries.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cbct_bench::{field, gold_map};
use cbct_core::field::{FieldElement, GoldParams};
use cbct_core::gold::{closed_entry, Classification};
use cbct_core::tables::{cbct_brute, cddt};
use cbct_core::weil::{weil_brute, weil_closed};

fn bench_field_mul(c: &mut Criterion) {
    let mut group = c.benchmark_group("field-mul");
    for n in [8u32, 16] {
        let f = field(n);
        let a = f.pow(f.generator(), 1234);
        let b = f.pow(f.generator(), 4321);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, _| {
            bench.iter(|| f.mul(black_box(a), black_box(b)))
        });
    }
    group.finish();
}

fn bench_weil(c: &mut Criterion) {
    let mut group = c.benchmark_group("weil-sum");
    for n in [8u32, 10] {
        let f = field(n);
        let params = GoldParams::new(n, 2);
        let u = f.pow(f.generator(), 7);
        let v = f.pow(f.generator(), 11);
        group.bench_with_input(BenchmarkId::new("brute", n), &n, |bench, _| {
            bench.iter(|| weil_brute(&f, 2, black_box(u), black_box(v)).value)
        });
        group.bench_with_input(BenchmarkId::new("closed", n), &n, |bench, _| {
            bench.iter(|| weil_closed(&f, &params, black_box(u), black_box(v)).value)
        });
    }
    group.finish();
}

fn bench_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("tables");
    group.sample_size(20);
    for n in [8u32, 10] {
        let sbox = gold_map(n, 2);
        let f = sbox.field().clone();
        let cval = f.generator();
        group.bench_with_input(BenchmarkId::new("cddt-full", n), &n, |bench, _| {
            bench.iter(|| cddt(black_box(&sbox), cval).unwrap().uniformity())
        });
        group.bench_with_input(BenchmarkId::new("cbct-row", n), &n, |bench, _| {
            bench.iter(|| {
                cbct_brute(black_box(&sbox), cval, FieldElement::ONE)
                    .unwrap()
                    .uniformity()
            })
        });
    }
    group.finish();
}

fn bench_closed_row(c: &mut Criterion) {
    let mut group = c.benchmark_group("closed-entries");
    group.sample_size(20);
    let f = field(6);
    let params = GoldParams::new(6, 2);
    let cval = f.generator();
    group.bench_function("classification-pass-n6", |bench| {
        bench.iter(|| Classification::new(&f, params, black_box(cval)).unwrap())
    });
    let cls = Classification::new(&f, params, cval).unwrap();
    group.bench_function("closed-row-n6", |bench| {
        bench.iter(|| {
            f.elements()
                .skip(1)
                .map(|b| closed_entry(&cls, black_box(b)))
                .sum::<u64>()
        })
    });
    group.finish();
}

criterion_group!(benches, bench_field_mul, bench_weil, bench_tables, bench_closed_row);
criterion_main!(benches);
