use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use jacpoisson::cohomology::{cohomology_dims, DEFAULT_BLOCK_CAP};
use jacpoisson::exterior::schouten;
use jacpoisson::mapping_class::word_matrix;
use jacpoisson::poisson::jacobi_check;
use jacpoisson::singularity::{normal_form, singular_locus};
use jacpoisson::{GermKind, H1Lattice, WeightVector};
use jacpoisson_bench::{chain_word, cusp, dense, expr, fold};

fn brackets(c: &mut Criterion) {
    let mut group = c.benchmark_group("jacobi");
    for (name, pi) in [("fold", fold()), ("cusp", cusp()), ("dense", dense())] {
        group.bench_with_input(BenchmarkId::from_parameter(name), &pi, |b, pi| {
            b.iter(|| jacobi_check(black_box(pi)))
        });
    }
    group.finish();
    let pi = dense();
    let x = jacpoisson::Multivector::scalar(expr("t^2*x*y - z^3"));
    c.bench_function("schouten/bivector-function", |b| b.iter(|| schouten(black_box(pi.body()), black_box(&x))));
}

fn cohomology(c: &mut Criterion) {
    let mut group = c.benchmark_group("cohomology/fold");
    group.sample_size(10);
    let pi = fold();
    let w = WeightVector::uniform(4);
    for cutoff in [1, 2, 3] {
        group.bench_with_input(BenchmarkId::from_parameter(cutoff), &cutoff, |b, &d| {
            b.iter(|| cohomology_dims(&pi, &w, d, DEFAULT_BLOCK_CAP).unwrap())
        });
    }
    group.finish();
}

fn lattice(c: &mut Criterion) {
    let mut group = c.benchmark_group("word_matrix");
    for g in [1, 3, 6] {
        let l = H1Lattice::new(g);
        let w = chain_word(g, 4);
        group.bench_with_input(BenchmarkId::from_parameter(g), &w, |b, w| b.iter(|| word_matrix(&l, w)));
    }
    group.finish();
}

fn locus(c: &mut Criterion) {
    let mut group = c.benchmark_group("singular_locus");
    group.sample_size(10);
    let germ = normal_form(GermKind::Cusp, &[1, -1]).unwrap();
    group.bench_function("cusp", |b| b.iter(|| singular_locus(black_box(&germ))));
    group.finish();
}

criterion_group!(benches, brackets, cohomology, lattice, locus);
criterion_main!(benches);
