use std::time::Duration;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use curvres_bench::{exponent_vectors, spec, JOBS};
use curvres_core::classes::integrand_denominator;
use curvres_core::dual::{epd_pipeline, Budget};
use curvres_core::engine::ResidueFunctional;
use curvres_core::{tautological_integral, tautological_integral_direct};

fn functional(c: &mut Criterion) {
    let mut g = c.benchmark_group("residue_functional");
    for (n, k) in [(4, 3), (6, 4)] {
        let den = integrand_denominator(n, k);
        let total: u32 = den.iter().map(|(_, m)| m).sum::<u32>() - k as u32;
        let betas = exponent_vectors(k, total);
        g.bench_with_input(BenchmarkId::new("cold", format!("n{n}_k{k}")), &betas, |b, betas| {
            b.iter(|| {
                let mut f = ResidueFunctional::new(&den, k).unwrap();
                for beta in betas {
                    black_box(f.eval(beta).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn integrals(c: &mut Criterion) {
    let mut g = c.benchmark_group("tautological_integral");
    g.sample_size(10).measurement_time(Duration::from_secs(20));
    for &(label, n, k, r, m) in JOBS {
        let s = spec(n, k, r, m);
        g.bench_function(label, |b| b.iter(|| tautological_integral(black_box(&s)).unwrap()));
    }
    let s = spec(4, 2, 2, &[(1, 10)]);
    g.bench_function("direct/n4_k2_c1^10", |b| b.iter(|| tautological_integral_direct(black_box(&s)).unwrap()));
    g.finish();
}

fn orbit_duals(c: &mut Criterion) {
    let mut g = c.benchmark_group("epd_pipeline");
    g.sample_size(10);
    for k in [3, 4] {
        g.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| epd_pipeline(k, Budget::default()).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, functional, integrals, orbit_duals);
criterion_main!(benches);
