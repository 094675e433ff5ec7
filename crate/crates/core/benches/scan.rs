use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use htm_core::bezout::stability_certificate;
use htm_core::matrix::Matrix;
use htm_core::moments::MomentSequence;
use htm_core::parallel;
use htm_core::scalar::parse_complex;
use htm_core::scan::{b_sweep, conjecture_scan, random_batch};
use htm_core::{GaussRat, MatrixPoly};
use std::hint::black_box;

const MODES: [(&str, bool); 2] = [("seq", false), ("par", true)];

fn m(rows: &[&[&str]]) -> Matrix<GaussRat> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|x| parse_complex(x).unwrap()).collect()).collect())
}

fn scan(c: &mut Criterion) {
    let mut g = c.benchmark_group("conjecture_scan");
    g.sample_size(10);
    for (name, par) in MODES {
        g.bench_function(BenchmarkId::new(name, 64), |b| b.iter(|| conjecture_scan(64, 2, 4, black_box(1), true, par)));
    }
    g.finish();
}

fn batch(c: &mut Criterion) {
    let mut g = c.benchmark_group("random_batch_certify");
    g.sample_size(10);
    for (name, par) in MODES {
        g.bench_function(BenchmarkId::new(name, 32), |b| {
            b.iter(|| {
                let polys = random_batch(32, 2, 4, black_box(3), true, par);
                parallel::map_slice(&polys, par, |f| stability_certificate(f, 0.0).map(|c| c.pd).ok())
            })
        });
    }
    g.finish();
}

fn sweep(c: &mut Criterion) {
    let p = MatrixPoly::from_leading(vec![
        Matrix::identity(2),
        m(&[&["2187/109", "1206/109"], &["0", "9"]]),
        m(&[&["10662/109", "8700/109"], &["0", "18"]]),
        m(&[&["11178/109", "10524/109"], &["0", "6"]]),
    ]);
    let base = MomentSequence::new(
        2,
        vec![m(&[&["2", "-1"], &["-1", "1"]]), m(&[&["4", "-1"], &["-1", "1"]]), m(&[&["16", "-2"], &["-2", "2"]])],
    )
    .unwrap();
    let bs: Vec<GaussRat> = (1..=24).map(|k| GaussRat::ratio(k, 4)).collect();
    let mut g = c.benchmark_group("b_sweep");
    g.sample_size(10);
    for (name, par) in MODES {
        g.bench_function(BenchmarkId::new(name, bs.len()), |b| b.iter(|| b_sweep(&p, &base, black_box(&bs), par)));
    }
    g.finish();
}

criterion_group!(benches, scan, batch, sweep);
criterion_main!(benches);
