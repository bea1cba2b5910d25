//! Parallel vs sequential grid evaluation, across series orders and grid
//! sizes. On a single hardware thread the two should be within noise of each
//! other (the rayon dispatch overhead is per-call, not per-point); with more
//! threads the parallel path wins roughly linearly.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use harmshear::criteria::check_local_univalence;
use harmshear::kernels::KernelParams;
use harmshear::shear::{direction_constant, shear_construct, DilatationSpec, ShearSpec};
use harmshear::{Grid, PowerSeries};
use num_complex::Complex64;

fn kernel_series(order: usize) -> PowerSeries {
    KernelParams::new(std::f64::consts::PI / 6.0, 1.1).psi_series(order)
}

fn bench_evaluate_many(c: &mut Criterion) {
    let mut group = c.benchmark_group("evaluate_many");
    for &order in &[256usize, 1024] {
        let series = kernel_series(order);
        for &(radii, angles) in &[(16usize, 120usize), (64, 720)] {
            let grid = Grid::equispaced(radii, 0.99, angles).unwrap();
            let points = grid.points().to_vec();
            let id = format!("order{order}_grid{}x{}", radii, angles);
            group.bench_with_input(
                BenchmarkId::new("parallel", &id),
                &points,
                |b, pts| b.iter(|| black_box(series.evaluate_many(pts).unwrap())),
            );
            group.bench_with_input(
                BenchmarkId::new("sequential", &id),
                &points,
                |b, pts| b.iter(|| black_box(series.evaluate_many_sequential(pts).unwrap())),
            );
        }
    }
    group.finish();
}

fn bench_univalence_scan(c: &mut Criterion) {
    let f = shear_construct(&ShearSpec::new(
        KernelParams::new(0.0, 0.0).antiderivative_series(512),
        direction_constant(0.0),
        DilatationSpec::Monomial {
            coefficient: Complex64::ONE,
            degree: 1,
        },
    ))
    .unwrap();
    let grid = Grid::equispaced(32, 0.99, 240).unwrap();
    c.bench_function("univalence_scan_32x240_order512", |b| {
        b.iter(|| black_box(check_local_univalence(&f, &grid).unwrap()))
    });
}

criterion_group!(benches, bench_evaluate_many, bench_univalence_scan);
criterion_main!(benches);
