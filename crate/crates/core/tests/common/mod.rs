#![allow(dead_code)]

use curvres_core::{ChernMonomial, ExactRational, IntegrandSpec, LinearForm, Monomial, MultiPoly, SymbolId};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn p(s: &str) -> MultiPoly {
    s.parse().unwrap()
}

/// A monomial in `z_1..z_k` of total degree at most `max_deg`.
pub fn random_z_monomial(rng: &mut impl Rng, k: usize, max_deg: u32) -> MultiPoly {
    let total = rng.gen_range(0..=max_deg);
    let mut e = vec![0u32; k];
    for _ in 0..total {
        e[rng.gen_range(0..k)] += 1;
    }
    let m = Monomial::from_pairs((0..k).filter(|&i| e[i] > 0).map(|i| (SymbolId::z(i + 1), e[i])));
    MultiPoly::term(m, ExactRational::ONE)
}

/// A random polynomial in the given symbols with small integer coefficients.
pub fn random_poly(rng: &mut impl Rng, symbols: &[SymbolId], terms: usize, max_exp: u32) -> MultiPoly {
    let parts = (0..terms).map(|_| {
        let m = Monomial::from_pairs(symbols.iter().map(|&s| (s, rng.gen_range(0..=max_exp))).filter(|(_, e)| *e > 0));
        (m, ExactRational::from_integer(rng.gen_range(-4..=4)))
    });
    MultiPoly::from_terms(parts)
}

/// A linear form in `z_1..z_k` whose leading variable is `lead`, with an
/// optional `λ`-constant.
pub fn random_form(rng: &mut impl Rng, k: usize, lead: usize) -> LinearForm {
    let mut coeffs = Vec::new();
    for i in 1..lead {
        let c = rng.gen_range(-2..=2);
        if c != 0 {
            coeffs.push((i, c));
        }
    }
    let mut top = rng.gen_range(-2..=2);
    if top == 0 {
        top = 1;
    }
    coeffs.push((lead, top));
    let z = LinearForm::from_ints(k, &coeffs).unwrap();
    if rng.gen_bool(0.5) {
        let lam = MultiPoly::var(SymbolId::lambda(rng.gen_range(1..=2)));
        LinearForm::from_poly(&z.to_poly().add(&lam), k).unwrap()
    } else {
        z
    }
}

/// A uniformly chosen Chern monomial of the expected weighted degree.
pub fn random_spec(rng: &mut impl Rng, n: usize, k: usize, r: usize) -> IntegrandSpec {
    let deg = IntegrandSpec::expected_degree(n, k);
    let all = ChernMonomial::all_of_weighted_degree(deg, r * (k + 1));
    let m = all[rng.gen_range(0..all.len())].clone();
    IntegrandSpec::new(n, k, r, m, false).unwrap()
}
