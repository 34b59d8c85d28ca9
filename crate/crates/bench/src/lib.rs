//! Benchmark fixtures for the residue engine.

use curvres_core::{ChernMonomial, IntegrandSpec};

/// Integrals timed by the `engine` bench, as `(label, n, k, r, monomial)`.
pub const JOBS: &[(&str, usize, usize, usize, &[(usize, u32)])] = &[
    ("n4_k2_c1^10", 4, 2, 2, &[(1, 10)]),
    ("n4_k3_c1^4c2^3c3", 4, 3, 2, &[(1, 4), (2, 3), (3, 1)]),
    ("n5_k3_c1^17", 5, 3, 2, &[(1, 17)]),
    ("n6_k4_c1^26", 6, 4, 2, &[(1, 26)]),
];

pub fn spec(n: usize, k: usize, r: usize, mono: &[(usize, u32)]) -> IntegrandSpec {
    let m = ChernMonomial::new(mono.iter().copied()).expect("fixture monomial");
    IntegrandSpec::new(n, k, r, m, false).expect("fixture spec")
}

/// All exponent vectors in `k` variables of total degree `d`.
pub fn exponent_vectors(k: usize, d: u32) -> Vec<Vec<u32>> {
    if k == 1 {
        return vec![vec![d]];
    }
    (0..=d)
        .flat_map(|a| {
            exponent_vectors(k - 1, d - a).into_iter().map(move |mut v| {
                v.insert(0, a);
                v
            })
        })
        .collect()
}
