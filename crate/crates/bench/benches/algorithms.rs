use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use zornring::testkit::{random_poset, GenConfig};
use zornring::zorn::{chain_poset, choice_poset, ChoiceFamily};
use zornring::{dominating_witness, wzl_pipeline};
use zornring_bench::big_pair;

fn polynomials(c: &mut Criterion) {
    let (poset, f, g) = big_pair(17, 8);
    c.bench_function("mul two big polynomials", |b| b.iter(|| black_box(&f) * black_box(&g)));
    let fg = &f * &g;
    c.bench_function("classify product", |b| {
        b.iter(|| dominating_witness(black_box(&poset), black_box(&fg)).unwrap())
    });
    let text = fg.to_string();
    c.bench_function("parse canonical text", |b| {
        b.iter(|| black_box(&text).parse::<zornring::Polynomial>().unwrap())
    });
}

fn posets(c: &mut Criterion) {
    let cfg = GenConfig {
        seed: 5,
        max_nodes: 12,
        edge_probability: 0.25,
        ..GenConfig::default()
    };
    let poset = random_poset(&cfg).unwrap();
    c.bench_function("maximal compatible subsets (structural)", |b| {
        b.iter(|| black_box(&poset).maximal_compatible_subsets())
    });
    c.bench_function("maximal compatible subsets (brute force)", |b| {
        b.iter(|| black_box(&poset).maximal_compatible_subsets_bruteforce().unwrap())
    });
    c.bench_function("pipeline on 12-node poset", |b| {
        b.iter(|| wzl_pipeline(black_box(&poset)).unwrap())
    });
}

fn derived(c: &mut Criterion) {
    let family = ChoiceFamily::new([
        ("1", vec!["a", "b", "c"]),
        ("2", vec!["a", "b", "c"]),
        ("3", vec!["a", "b", "c"]),
    ])
    .unwrap();
    c.bench_function("choice poset 3x3", |b| b.iter(|| choice_poset(black_box(&family)).unwrap()));
    let cfg = GenConfig {
        seed: 3,
        max_nodes: 8,
        ..GenConfig::default()
    };
    let poset = random_poset(&cfg).unwrap();
    c.bench_function("chain poset of 8-node poset", |b| {
        b.iter(|| chain_poset(black_box(&poset)).unwrap())
    });
}

criterion_group!(benches, polynomials, posets, derived);
criterion_main!(benches);
