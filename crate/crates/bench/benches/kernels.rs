use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use colorideal::nulla::{admissible_degrees, assemble_system, solve_system};
use colorideal::{build_groebner_basis, count_colorings_chordal, nulla_search, FieldSpec};
use colorideal_bench::{certificate_cell, chordal_family, CERTIFICATE_CELLS};

fn chordal(c: &mut Criterion) {
    let mut group = c.benchmark_group("chordal_gb");
    for g in chordal_family() {
        group.bench_with_input(BenchmarkId::new("build", g.n()), &g, |b, g| {
            b.iter(|| build_groebner_basis(black_box(g), 4, FieldSpec::RATIONALS).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("count", g.n()), &g, |b, g| {
            b.iter(|| count_colorings_chordal(black_box(g), 5).unwrap())
        });
    }
    group.finish();
}

fn certificates(c: &mut Criterion) {
    let mut group = c.benchmark_group("nulla");
    group.sample_size(10);
    for &(n, k, p) in CERTIFICATE_CELLS {
        let (g, k, field) = certificate_cell(n, k, p);
        let id = format!("K{n}_k{k}_F{p}");
        group.bench_function(BenchmarkId::new("search", &id), |b| {
            b.iter(|| nulla_search(black_box(&g), k, field, 3 * k + 1).unwrap())
        });
        let d = admissible_degrees(k, 3 * k + 1)[0];
        let sys = assemble_system(&g, k, field, d).unwrap();
        group.bench_function(BenchmarkId::new("solve_first_degree", &id), |b| {
            b.iter(|| solve_system(black_box(&sys)))
        });
    }
    group.finish();
}

criterion_group!(benches, chordal, certificates);
criterion_main!(benches);
