use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use spinlab::commutant::commutant_dim_with;
use spinlab::exec::Execution;
use spinlab::gf::{GfVector, Prime};
use spinlab::io::random_alternating;
use spinlab::rep::{canonical_irreducible_rep, prop11_rep, verify_relations_with, word_matrix, Limits};
use spinlab::symplectic::CommutationMatrix;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn relations(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_relations");
    for (p, n) in [(Prime::TWO, 10), (Prime::TWO, 14), (Prime::THREE, 8)] {
        let rep = prop11_rep(&random_alternating(p, n, 1), &Limits::default()).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, format!("p{p}_n{n}")), &rep, |b, rep| {
                b.iter(|| verify_relations_with(black_box(rep), exec))
            });
        }
    }
    group.finish();
}

fn faithfulness(c: &mut Criterion) {
    let mut group = c.benchmark_group("faithfulness_sweep");
    group.sample_size(10);
    for n in [8, 10] {
        let rep = prop11_rep(&random_alternating(Prime::TWO, n, 2), &Limits::default()).unwrap();
        let xs: Vec<GfVector> = GfVector::enumerate(Prime::TWO, n).collect();
        for (name, exec) in MODES {
            group.bench_function(BenchmarkId::new(name, format!("n{n}")), |b| {
                b.iter(|| exec.all(xs.len(), |i| word_matrix(&rep, &xs[i]).unwrap().is_scalar().is_some() == xs[i].is_zero()))
            });
        }
    }
    group.finish();
}

fn commutant(c: &mut Criterion) {
    let mut group = c.benchmark_group("commutant_dim");
    group.sample_size(10);
    let limits = Limits::default();
    let cases = [
        ("prop11_zero_n6", prop11_rep(&CommutationMatrix::zero(Prime::TWO, 6), &limits).unwrap()),
        ("irr_standard_r4", canonical_irreducible_rep(&CommutationMatrix::standard(Prime::TWO, 4), &limits).unwrap()),
        ("irr_p3_r2", canonical_irreducible_rep(&CommutationMatrix::standard(Prime::THREE, 2), &limits).unwrap()),
    ];
    for (label, rep) in &cases {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, label), rep, |b, rep| {
                b.iter(|| commutant_dim_with(black_box(rep), &limits, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn elimination(c: &mut Criterion) {
    let mut group = c.benchmark_group("gf2_rref");
    for n in [64, 256] {
        let m = random_alternating(Prime::TWO, n, 3).matrix().clone();
        group.bench_with_input(BenchmarkId::new("packed", n), &m, |b, m| b.iter(|| black_box(m).rref()));
        group.bench_with_input(BenchmarkId::new("dense", n), &m, |b, m| b.iter(|| black_box(m).rref_dense()));
    }
    group.finish();
}

criterion_group!(benches, relations, faithfulness, commutant, elimination);
criterion_main!(benches);
