use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gamow_susy::darboux::{partner_potential, superpotential};
use gamow_susy::gamow::{ComplexWavenumber, GamowSpec};
use gamow_susy::numerics::par::map_points_seq;
use gamow_susy::numerics::RadialGrid;
use gamow_susy::Complex64;

fn partner_on_grid(c: &mut Criterion) {
    let k = ComplexWavenumber::from_energy(Complex64::new(-0.2604, 0.104)).unwrap();
    let mut group = c.benchmark_group("partner_potential");
    for (label, xi) in [("gamow", 0.0), ("generalized", 1.0)] {
        let spec = GamowSpec::new(1, k, Complex64::new(xi, 0.0)).unwrap();
        let pp = partner_potential(superpotential(spec));
        for n in [1_000usize, 8_000] {
            let grid = RadialGrid::geometric_then_uniform(1e-3, 40.0, n).unwrap();
            let pts = grid.points();
            group.bench_with_input(BenchmarkId::new(format!("{label}/seq"), n), &n, |b, _| {
                b.iter(|| map_points_seq(black_box(pts), |r| pp.v(r)).unwrap())
            });
            #[cfg(feature = "parallel")]
            group.bench_with_input(BenchmarkId::new(format!("{label}/par"), n), &n, |b, _| {
                b.iter(|| {
                    gamow_susy::numerics::par::map_points_par(black_box(pts), |r| pp.v(r)).unwrap()
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, partner_on_grid);
criterion_main!(benches);
