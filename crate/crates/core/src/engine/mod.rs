//! End-to-end evaluation: integrand, iterated residue, reduction to Chern
//! classes of `F` and Segre classes of `X`.

pub mod functional;
pub mod oracle;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rustc_hash::FxHashMap;

use crate::classes::{
    build_integrand, integrand_denominator, integrand_prefactor, taut_chern_all, IntegrandSpec,
};
use crate::poly::{GradedDegree, Monomial, MultiPoly};
use crate::rational::ExactRational;
use crate::residue::iterated_residue;
use crate::residue::vanishing::{option1_from_degree, option2_from_degree, poly_degree_in};
use crate::symbol::{Alphabet, SymbolId};
use crate::symmetric::{is_theta_symmetric, reduce_theta_symmetric};
use crate::Error;

pub use functional::ResidueFunctional;
pub use oracle::k1_oracle;

/// A degree-`n` polynomial in `s_1(X)..s_n(X)` and `c_1(F)..c_r(F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalPolynomial {
    poly: MultiPoly,
    pub n: usize,
    pub k: usize,
    pub r: usize,
}

impl UniversalPolynomial {
    /// Checks the alphabet, index bounds and homogeneity.
    pub fn new(poly: MultiPoly, n: usize, k: usize, r: usize) -> Result<Self, Error> {
        for s in poly.symbols() {
            let ok = match s.alphabet() {
                Alphabet::SegreX => s.index() <= n,
                Alphabet::ChernF => s.index() <= r,
                _ => false,
            };
            if !ok {
                return Err(Error::Internal(format!("symbol {s} left in the result {poly}")));
            }
        }
        match poly.graded_degree() {
            GradedDegree::Homogeneous(d) if d as usize == n || poly.is_zero() => {}
            _ => return Err(Error::Internal(format!("result {poly} is not homogeneous of degree {n}"))),
        }
        Ok(UniversalPolynomial { poly, n, k, r })
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn terms(&self) -> &[(Monomial, ExactRational)] {
        self.poly.terms()
    }
}

/// Intersection numbers `∫_X` of degree-`n` monomials in `s_i(X)`, `c_j(F)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntersectionTable {
    pub entries: BTreeMap<Monomial, ExactRational>,
}

impl IntersectionTable {
    pub fn new(entries: BTreeMap<Monomial, ExactRational>) -> Self {
        IntersectionTable { entries }
    }
}

/// `Σ coefficient × table value`.
pub fn evaluate_numeric(u: &UniversalPolynomial, table: &IntersectionTable) -> Result<ExactRational, Error> {
    let mut acc = ExactRational::ZERO;
    for (m, c) in u.terms() {
        let v = table.entries.get(m).ok_or_else(|| Error::MissingEntry(m.to_string()))?;
        acc += &(c * v);
    }
    Ok(acc)
}

/// One step of the iterated residue in a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueStep {
    pub variable: String,
    /// Distinct residue values computed at this level.
    pub states: usize,
}

/// Vanishing criteria evaluated on the full integrand for one `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingDiagnostic {
    pub l: usize,
    pub option1: bool,
    pub option2: bool,
}

/// Description of the integrand and of the residue computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueReport {
    pub numerator_degree: u32,
    /// The linear forms `z_i + z_j − z_l`.
    pub linear_forms: Vec<String>,
    /// All denominator factors with multiplicities.
    pub denominator: Vec<(String, u32)>,
    pub denominator_degree: u32,
    /// Graded degree of the whole rational expression (`n − k`).
    pub integrand_degree: i64,
    /// Terms of the numerator that can contribute to the residue.
    pub contributing_terms: usize,
    pub steps: Vec<ResidueStep>,
    pub vanishing: Vec<VanishingDiagnostic>,
    /// Wall-clock time; not part of any serialized result.
    pub elapsed: Duration,
}

fn theta_weight(s: SymbolId) -> u32 {
    match s.alphabet() {
        Alphabet::Z => 0,
        _ => s.degree(),
    }
}

/// `Π c_i^{e_i}` keeping only terms of θ-degree `≤ n`.
fn chern_value_bounded(spec: &IntegrandSpec) -> MultiPoly {
    let c = taut_chern_all(spec.k, spec.r);
    chern_value_small(spec, &c).unwrap_or_else(|| {
        let cap = spec.n as u32;
        let mut out = MultiPoly::one();
        for (&i, &e) in spec.monomial.exponents() {
            for _ in 0..e {
                out = out.mul_bounded(&c[i], theta_weight, cap);
            }
        }
        out
    })
}

/// The same product with `i128` coefficients; `None` on overflow.
fn chern_value_small(spec: &IntegrandSpec, c: &[MultiPoly]) -> Option<MultiPoly> {
    type Terms = Vec<(Monomial, u32, i128)>;
    let small = |p: &MultiPoly| -> Option<Terms> {
        p.terms()
            .iter()
            .map(|(m, x)| {
                let v: i64 = x.is_integer().then(|| i64::try_from(x.numer()).ok())??;
                Some((m.clone(), m.weight(theta_weight), v as i128))
            })
            .collect()
    };
    let cap = spec.n as u32;
    let mut acc: Terms = vec![(Monomial::one(), 0, 1)];
    for (&i, &e) in spec.monomial.exponents() {
        let factor = small(&c[i])?;
        for _ in 0..e {
            let mut next: FxHashMap<Monomial, (u32, i128)> = FxHashMap::default();
            for (ma, wa, ca) in &acc {
                for (mb, wb, cb) in &factor {
                    if wa + wb > cap {
                        continue;
                    }
                    let x = ca.checked_mul(*cb)?;
                    let slot = next.entry(ma.mul(mb)).or_insert((wa + wb, 0));
                    slot.1 = slot.1.checked_add(x)?;
                }
            }
            acc = next.into_iter().filter(|(_, (_, x))| *x != 0).map(|(m, (w, x))| (m, w, x)).collect();
        }
    }
    Some(MultiPoly::from_terms(
        acc.into_iter()
            .map(|(m, _, x)| (m, ExactRational::from_bigint(num_bigint::BigInt::from(x)))),
    ))
}

fn z_exponents(m: &Monomial, k: usize) -> (Vec<u32>, Monomial) {
    let mut beta = vec![0u32; k];
    for (s, e) in m.iter() {
        if s.alphabet() == Alphabet::Z {
            beta[s.index() - 1] = e;
        }
    }
    (beta, m.filter(|s| s.alphabet() != Alphabet::Z))
}

/// Compositions of `total` into `parts` entries, each `≤ max`.
fn compositions(total: u32, parts: usize, max: u32) -> Vec<Vec<u32>> {
    fn go(total: u32, parts: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for x in 0..=total.min(max) {
            cur.push(x);
            go(total - x, parts - 1, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, max, &mut Vec::new(), &mut out);
    out
}

/// Residue of the integrand before θ-reduction, through the memoized
/// functional. Only numerator terms whose non-z part has degree exactly `n`
/// are formed; the others have zero residue by homogeneity.
fn residue_theta_form(spec: &IntegrandSpec) -> Result<(MultiPoly, usize, Vec<usize>), Error> {
    let (n, k) = (spec.n, spec.k);
    let prefactor = integrand_prefactor(n, k)?;
    let pre: Vec<(Vec<u32>, ExactRational)> = prefactor
        .terms()
        .iter()
        .map(|(m, c)| (z_exponents(m, k).0, c.clone()))
        .collect();
    let den = integrand_denominator(n, k);
    let mut fun = ResidueFunctional::new(&den, k)?;
    let chern = chern_value_bounded(spec);

    let mut with_prefactor: FxHashMap<Vec<u32>, ExactRational> = FxHashMap::default();
    let mut acc: FxHashMap<Monomial, ExactRational> = FxHashMap::default();
    let mut comps: FxHashMap<u32, Vec<Vec<u32>>> = FxHashMap::default();
    let mut contributing = 0usize;
    for (mono, c) in chern.terms() {
        let (alpha, rest) = z_exponents(mono, k);
        let used = rest.weight(theta_weight);
        if used > n as u32 {
            continue;
        }
        let js = comps
            .entry(n as u32 - used)
            .or_insert_with(|| compositions(n as u32 - used, k, n as u32));
        for j in js.iter() {
            contributing += 1;
            let beta: Vec<u32> = (0..k).map(|i| alpha[i] + n as u32 - j[i]).collect();
            let val = match with_prefactor.get(&beta) {
                Some(v) => v.clone(),
                None => {
                    let mut v = ExactRational::ZERO;
                    for (gamma, a) in &pre {
                        let shifted: Vec<u32> = beta.iter().zip(gamma).map(|(x, y)| x + y).collect();
                        let r = fun.eval(&shifted)?;
                        if !r.is_zero() {
                            v += &(a * &r);
                        }
                    }
                    with_prefactor.insert(beta.clone(), v.clone());
                    v
                }
            };
            if val.is_zero() {
                continue;
            }
            let segre = Monomial::from_pairs(
                j.iter().filter(|&&x| x > 0).map(|&x| (SymbolId::segre(x as usize), 1)),
            );
            let key = rest.mul(&segre);
            let add = c * &val;
            match acc.get_mut(&key) {
                Some(x) => *x += &add,
                None => {
                    acc.insert(key, add);
                }
            }
        }
    }
    Ok((MultiPoly::from_terms(acc), contributing, fun.memo_sizes()))
}

fn finish(raw: MultiPoly, spec: &IntegrandSpec) -> Result<UniversalPolynomial, Error> {
    if raw.contains_symbol(|s| s.alphabet() == Alphabet::Z) {
        return Err(Error::Internal(format!("z variable survived the residue: {raw}")));
    }
    if !is_theta_symmetric(&raw, spec.r) {
        return Err(Error::Internal(format!("residue is not symmetric in theta: {raw}")));
    }
    let reduced = reduce_theta_symmetric(&raw, spec.r)?;
    UniversalPolynomial::new(reduced, spec.n, spec.k, spec.r)
}

/// The tautological integral as a universal polynomial.
pub fn tautological_integral(spec: &IntegrandSpec) -> Result<UniversalPolynomial, Error> {
    Ok(integrate_with_report(spec)?.0)
}

/// The same integral by expanding the full integrand and taking the
/// stepwise residue. Slow; used to cross-check the memoized route.
pub fn tautological_integral_direct(spec: &IntegrandSpec) -> Result<UniversalPolynomial, Error> {
    let raw = iterated_residue(&build_integrand(spec)?)?;
    finish(raw, spec)
}

/// Report without the final reduction.
pub fn residue_report(spec: &IntegrandSpec) -> Result<ResidueReport, Error> {
    Ok(integrate_with_report(spec)?.1)
}

/// Integral and report from a single residue computation.
pub fn integrate_with_report(spec: &IntegrandSpec) -> Result<(UniversalPolynomial, ResidueReport), Error> {
    let start = Instant::now();
    let (raw, contributing, memo) = residue_theta_form(spec)?;
    let result = finish(raw, spec)?;
    let mut report = describe(spec)?;
    report.contributing_terms = contributing;
    report.steps = (1..=spec.k)
        .rev()
        .map(|m| ResidueStep { variable: format!("z{m}"), states: memo[m - 1] })
        .collect();
    report.elapsed = start.elapsed();
    Ok((result, report))
}

/// Degree data of the integrand, computed from its factors.
fn describe(spec: &IntegrandSpec) -> Result<ResidueReport, Error> {
    let (n, k, r) = (spec.n, spec.k, spec.r);
    let den = integrand_denominator(n, k);
    let prefactor = integrand_prefactor(n, k)?;
    let chern = taut_chern_all(k, r);
    let numerator_degree = spec.monomial.weighted_degree()
        + match prefactor.graded_degree() {
            GradedDegree::Homogeneous(d) => d,
            GradedDegree::Nonhomogeneous => return Err(Error::Internal("prefactor not homogeneous".into())),
        }
        + (k * n) as u32;
    let denominator_degree: u32 = den.iter().map(|(_, m)| m).sum();

    // deg(p; S) is additive over the factors of the numerator
    let degree_in = |set: &[usize]| -> Option<u32> {
        let mut d = poly_degree_in(&prefactor, set)?;
        for (&i, &e) in spec.monomial.exponents() {
            d += e * poly_degree_in(&chern[i], set)?;
        }
        d += (n * set.iter().filter(|&&s| s <= k).count()) as u32;
        Some(d)
    };
    let flat: Vec<_> = den
        .iter()
        .flat_map(|(f, m)| std::iter::repeat(f.clone()).take(*m as usize))
        .collect();
    let vanishing = (1..=k)
        .map(|l| {
            let set: Vec<usize> = (l..=k).collect();
            VanishingDiagnostic {
                l,
                option1: option1_from_degree(degree_in(&set), &flat, k, l),
                option2: option2_from_degree(degree_in(&[l]), &flat, l),
            }
        })
        .collect();

    let linear_forms = crate::classes::denominator_forms(k).iter().map(|f| f.to_string()).collect();
    let denominator = den
        .iter()
        .map(|(f, m)| {
            if *m == 1 {
                (f.to_string(), 1)
            } else {
                (f.to_string(), *m)
            }
        })
        .collect();
    Ok(ResidueReport {
        numerator_degree,
        linear_forms,
        denominator,
        denominator_degree,
        integrand_degree: numerator_degree as i64 - denominator_degree as i64,
        contributing_terms: 0,
        steps: Vec::new(),
        vanishing,
        elapsed: Duration::ZERO,
    })
}
