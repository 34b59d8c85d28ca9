mod common;

use common::*;
use curvres_core::classes::integrand_denominator;
use curvres_core::engine::integrate_with_report;
use curvres_core::{
    k1_oracle, residue_report, tautological_integral, tautological_integral_direct, Alphabet, ChernMonomial,
    GradedDegree, IntegrandSpec,
};
use rand::Rng;

#[test]
fn two_points_match_the_projective_bundle() {
    let mut checked = 0;
    for n in 2..=4 {
        for r in 1..=2 {
            for m in ChernMonomial::all_of_weighted_degree((2 * n - 1) as u32, 2 * r) {
                let spec = IntegrandSpec::new(n, 1, r, m.clone(), false).unwrap();
                assert_eq!(tautological_integral(&spec).unwrap(), k1_oracle(n, r, &m).unwrap(), "n = {n}, r = {r}, {m}");
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 29);
}

#[test]
fn k1_oracle_bottom_of_the_fibre() {
    // only ℓ^{n−1} contributes to the s-free part; with r = 1 and M = c_2^{n−1} c_1
    // the answer is read off by hand: c_2 = cF1^2 + cF1 ℓ, c_1 = 2cF1 + ℓ
    let m = ChernMonomial::new([(2, 1), (1, 1)]).unwrap();
    let u = k1_oracle(2, 1, &m).unwrap();
    // (cF1^2 + cF1 ℓ)(2cF1 + ℓ) = 2cF1^3 + 3cF1^2 ℓ + cF1 ℓ^2
    assert_eq!(u.poly(), &p("-3*cF1^2 - cF1*s1"));
}

#[test]
fn memoized_and_direct_routes_agree() {
    let mut rng = rng(12);
    for _ in 0..12 {
        let n = rng.gen_range(2..=3);
        let k = rng.gen_range(1..=3);
        let spec = random_spec(&mut rng, n, k, 1);
        assert_eq!(tautological_integral(&spec).unwrap(), tautological_integral_direct(&spec).unwrap(), "{spec:?}");
    }
}

#[test]
fn structural_properties_of_random_jobs() {
    let mut rng = rng(2024);
    for _ in 0..20 {
        let k = rng.gen_range(2..=4);
        let n = rng.gen_range(2..=if k == 4 { 5 } else { 6 });
        let r = rng.gen_range(1..=2);
        let spec = random_spec(&mut rng, n, k, r);
        let (u, report) = integrate_with_report(&spec).unwrap();
        let poly = u.poly();
        assert!(!poly.contains_symbol(|s| matches!(s.alphabet(), Alphabet::Z | Alphabet::Theta | Alphabet::Lambda)));
        assert!(poly.is_zero() || poly.graded_degree() == GradedDegree::Homogeneous(n as u32));
        assert_eq!(report.integrand_degree, n as i64 - k as i64);
        let den: u32 = integrand_denominator(n, k).iter().map(|(_, m)| m).sum();
        assert_eq!(report.denominator_degree, den);
    }
}

#[test]
fn results_are_deterministic() {
    let spec = IntegrandSpec::new(4, 3, 2, ChernMonomial::new([(1, 4), (2, 3), (3, 1)]).unwrap(), false).unwrap();
    let a = tautological_integral(&spec).unwrap();
    for _ in 0..3 {
        assert_eq!(tautological_integral(&spec).unwrap().poly().to_string(), a.poly().to_string());
    }
}

#[test]
fn report_contents() {
    let spec = IntegrandSpec::new(3, 2, 1, ChernMonomial::new([(1, 7)]).unwrap(), false).unwrap();
    let rep = residue_report(&spec).unwrap();
    let names: Vec<&str> = rep.denominator.iter().map(|(f, _)| f.as_str()).collect();
    assert_eq!(names, ["2*z1 - z2", "z1", "z2"]);
    assert_eq!(rep.denominator.iter().map(|(_, m)| *m).collect::<Vec<_>>(), [1, 6, 6]);
    assert_eq!(rep.steps.len(), 2);
    assert_eq!(rep.steps[0].variable, "z2");
    assert_eq!(rep.vanishing.len(), 2);
}

#[test]
fn unavailable_q() {
    let deg = IntegrandSpec::expected_degree(2, 6);
    let spec = IntegrandSpec::new(2, 6, 1, ChernMonomial::new([(1, deg)]).unwrap(), false).unwrap();
    assert_eq!(tautological_integral(&spec).unwrap_err().to_string(), "Q_6 unavailable");
}
