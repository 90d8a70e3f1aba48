use std::hint::black_box;

use cgt_bench::{chain, data_path};
use cgt_core::permgrp::{
    all_subgroups, c9_conjugacy_census, centralizer, parse_gens, Budget, ExhaustiveClasses, StabilizerChain,
};
use criterion::{criterion_group, criterion_main, Criterion};

fn chains(c: &mut Criterion) {
    let text = std::fs::read_to_string(data_path("psu38.gens")).expect("bundled generators");
    let (n, gens) = parse_gens(&text).expect("bundled generators parse");
    let mut g = c.benchmark_group("schreier-sims");
    g.sample_size(20);
    g.bench_function("PSU3(8) on 513 points", |b| b.iter(|| StabilizerChain::new(n, black_box(&gens))));
    g.finish();
}

fn searches(c: &mut Criterion) {
    let psu = chain("psu38.gens");
    let x = psu.generators()[0].clone();
    let mut g = c.benchmark_group("backtrack");
    g.sample_size(10);
    g.bench_function("PSU3(8) centralizer", |b| {
        b.iter(|| centralizer(&psu, black_box(&x), &mut Budget::unlimited()).expect("within budget"))
    });
    g.bench_function("PSU3(8) C9 census", |b| {
        b.iter(|| c9_conjugacy_census(&psu, 1, &mut Budget::unlimited()).expect("within budget"))
    });
    g.finish();

    let psl = chain("psl28.gens");
    c.bench_function("PSL2(8) exhaustive classes", |b| {
        b.iter(|| ExhaustiveClasses::compute(black_box(&psl), 100_000).expect("small group"))
    });
    let a5 = chain("a5.gens");
    c.bench_function("A5 subgroup lattice", |b| b.iter(|| all_subgroups(black_box(&a5)).expect("small group")));
}

criterion_group!(benches, chains, searches);
criterion_main!(benches);
