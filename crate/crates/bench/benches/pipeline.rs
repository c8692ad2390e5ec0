use criterion::{black_box, criterion_group, criterion_main, Criterion};

use squaring::fixtures::{nine_square_cnet, APPENDIX};
use squaring::{analyze, brute_generate, canonicalize, enumerate_isomers, parse_record, record_lines, solve_graph, Datum, Network};

fn network(c: &mut Criterion) {
    let e = nine_square_cnet();
    let net = Network::from_embedding(&e);
    c.bench_function("analyze nine-square network", |b| b.iter(|| analyze(black_box(&net)).unwrap()));
    c.bench_function("solve nine-square graph", |b| b.iter(|| solve_graph(black_box(&e), Datum::Last).unwrap()));
}

fn canonical(c: &mut Criterion) {
    let (_, line) = record_lines(APPENDIX).next().unwrap();
    let d = parse_record(line).unwrap().place().unwrap();
    c.bench_function("canonicalize 175a", |b| b.iter(|| canonicalize(black_box(&d)).unwrap()));
    c.bench_function("isomers of 175a", |b| b.iter(|| enumerate_isomers(black_box(&d)).unwrap()));
}

fn generate(c: &mut Criterion) {
    let mut g = c.benchmark_group("generate");
    g.sample_size(10);
    g.bench_function("brute_generate 7 vertices 12 edges", |b| b.iter(|| brute_generate(7, 12).unwrap()));
    g.finish();
}

criterion_group!(benches, network, canonical, generate);
criterion_main!(benches);
