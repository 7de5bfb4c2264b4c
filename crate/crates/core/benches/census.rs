//! Census throughput, parallel against sequential.
//!
//! Without the `parallel` feature both groups take the sequential path.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use qburge_core::combinat::{Composition, NatMatrix};
use qburge_core::flags::nalpha_census_all;
use qburge_core::qburge::forward_table;
use qburge_core::{set_parallel, Budget};

fn cases() -> Vec<(&'static str, NatMatrix, u64)> {
    let m = |rows: &[&[usize]]| NatMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap();
    vec![
        ("3x3-ones-p2", m(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]), 2),
        ("2x2-p5", m(&[&[1, 1], &[2, 1]]), 5),
        ("2x2-222-p3", m(&[&[1, 2], &[2, 1]]), 3),
        // The identity has the largest 𝔫_M: all strictly upper-triangular matrices.
        ("id-6-p2", NatMatrix::permutation(&[1, 2, 3, 4, 5, 6]).unwrap(), 2),
        ("id-5-p3", NatMatrix::permutation(&[1, 2, 3, 4, 5]).unwrap(), 3),
    ]
}

fn forward_tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("forward_table");
    for (name, m, p) in cases() {
        for par in [true, false] {
            let label = if par { "parallel" } else { "sequential" };
            g.bench_with_input(BenchmarkId::new(label, name), &(m.clone(), p), |b, (m, p)| {
                set_parallel(par);
                b.iter(|| forward_table(black_box(m), *p).unwrap());
            });
        }
    }
    g.finish();
    set_parallel(true);
}

fn nalpha(c: &mut Criterion) {
    let mut g = c.benchmark_group("nalpha_census");
    for (name, parts, p) in [("121-p3", vec![1, 2, 1], 3u64), ("11111-p3", vec![1; 5], 3)] {
        let alpha = Composition::new(parts);
        for par in [true, false] {
            let label = if par { "parallel" } else { "sequential" };
            g.bench_function(BenchmarkId::new(label, name), |b| {
                set_parallel(par);
                b.iter(|| nalpha_census_all(black_box(&alpha), p, Budget::current()).unwrap());
            });
        }
    }
    g.finish();
    set_parallel(true);
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = forward_tables, nalpha
}
criterion_main!(benches);
