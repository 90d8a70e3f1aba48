use std::hint::black_box;

use cgt_bench::table;
use cgt_core::classops::{cmc, decompose, sum_of_irreducibles};
use cgt_core::Cyclotomic;
use criterion::{criterion_group, criterion_main, Criterion};

fn arithmetic(c: &mut Criterion) {
    // z9 + z9^2 + z9^4 and a conjugate, in a field with a nontrivial basis reduction
    let a = &(&Cyclotomic::root_of_unity(9, 1) + &Cyclotomic::root_of_unity(9, 2)) + &Cyclotomic::root_of_unity(9, 4);
    let b = a.galois(2);
    c.bench_function("cyclotomic mul order 9", |bench| bench.iter(|| black_box(&a) * black_box(&b)));

    let e = &Cyclotomic::root_of_unity(7, 1) + &Cyclotomic::root_of_unity(5, 2);
    c.bench_function("cyclotomic pow order 35", |bench| bench.iter(|| black_box(&e).pow(black_box(12))));
}

fn table_ops(c: &mut Criterion) {
    let th = table("th.ct");
    let chi = sum_of_irreducibles(&th, &["61256", "4123", "248", "1"]).expect("irreducibles exist");
    c.bench_function("decompose Th 65628", |bench| bench.iter(|| decompose(black_box(&chi)).expect("full table")));

    let psl = table("psl28.ct");
    c.bench_function("cmc PSL2(8) 2A 3A 7A", |bench| {
        bench.iter(|| cmc(black_box(&psl), "2A", "3A", "7A").expect("classes exist"))
    });
}

criterion_group!(benches, arithmetic, table_ops);
criterion_main!(benches);
