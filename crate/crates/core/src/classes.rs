//! Characteristic-class ingredients of the residue integrand.

use std::collections::BTreeMap;
use std::fmt;

use crate::dual::qk_lookup;
use crate::poly::MultiPoly;
use crate::rational::ExactRational;
use crate::residue::{LinearForm, ResidueForm};
use crate::symbol::SymbolId;
use crate::Error;

/// A monomial `Π c_i^{e_i}` in the Chern classes of the tautological bundle.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChernMonomial {
    exponents: BTreeMap<usize, u32>,
}

impl ChernMonomial {
    /// Zero exponents are dropped; indices must be positive.
    pub fn new(exponents: impl IntoIterator<Item = (usize, u32)>) -> Result<Self, Error> {
        let mut map = BTreeMap::new();
        for (i, e) in exponents {
            if i == 0 {
                return Err(Error::InvalidSpec("Chern class index must be positive".into()));
            }
            if e > 0 {
                *map.entry(i).or_insert(0) += e;
            }
        }
        Ok(ChernMonomial { exponents: map })
    }

    pub fn exponents(&self) -> &BTreeMap<usize, u32> {
        &self.exponents
    }

    /// `Σ i·e_i`.
    pub fn weighted_degree(&self) -> u32 {
        self.exponents.iter().map(|(&i, &e)| i as u32 * e).sum()
    }

    pub fn max_index(&self) -> usize {
        self.exponents.keys().next_back().copied().unwrap_or(0)
    }

    /// Number of factors counted with multiplicity.
    pub fn factor_count(&self) -> u32 {
        self.exponents.values().sum()
    }

    /// Every monomial of the given weighted degree using `c_1..c_max`.
    pub fn all_of_weighted_degree(degree: u32, max: usize) -> Vec<ChernMonomial> {
        fn go(rem: u32, idx: usize, cur: &mut Vec<(usize, u32)>, out: &mut Vec<ChernMonomial>) {
            if rem == 0 {
                out.push(ChernMonomial::new(cur.iter().copied()).unwrap());
                return;
            }
            if idx == 0 {
                return;
            }
            for e in 0..=rem / idx as u32 {
                cur.push((idx, e));
                go(rem - e * idx as u32, idx - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(degree, max, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for ChernMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        for (n, (i, e)) in self.exponents.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "c{i}")?;
            } else {
                write!(f, "c{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Parameters of one integral: `dim X = n`, `k + 1` points, `rk F = r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrandSpec {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub monomial: ChernMonomial,
}

impl IntegrandSpec {
    /// Validates the parameters and, unless `override_degree_check`, the
    /// weighted degree `n + (n − 1)k` of the monomial.
    pub fn new(
        n: usize,
        k: usize,
        r: usize,
        monomial: ChernMonomial,
        override_degree_check: bool,
    ) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::InvalidSpec(format!("n = {n}: dimension must be at least 2")));
        }
        if k < 1 {
            return Err(Error::InvalidSpec("k must be at least 1".into()));
        }
        if r < 1 {
            return Err(Error::InvalidSpec("r must be at least 1".into()));
        }
        if n > SymbolId::MAX_INDEX as usize || k > SymbolId::MAX_INDEX as usize || r > 64 {
            return Err(Error::OutOfRange(format!("parameters n = {n}, k = {k}, r = {r} too large")));
        }
        let top = r * (k + 1);
        if monomial.max_index() > top {
            return Err(Error::InvalidSpec(format!(
                "c{} exceeds the rank r(k+1) = {top}",
                monomial.max_index()
            )));
        }
        let expected = Self::expected_degree(n, k);
        let actual = monomial.weighted_degree();
        if !override_degree_check && actual != expected {
            return Err(Error::WeightedDegree { actual, expected });
        }
        Ok(IntegrandSpec { n, k, r, monomial })
    }

    /// `n + (n − 1)k`, the dimension of the curvilinear component.
    pub fn expected_degree(n: usize, k: usize) -> u32 {
        (n + (n - 1) * k) as u32
    }
}

/// `Σ_{j=0}^n s_j(X) z_i^{n−j}`, the numerator of `s_X(1/z_i)` over `z_i^n`.
pub fn segre_series(n: usize, zindex: usize) -> MultiPoly {
    let z = SymbolId::z(zindex);
    let terms = (0..=n).map(|j| {
        let mut pairs = vec![(z, (n - j) as u32)];
        if j > 0 {
            pairs.push((SymbolId::segre(j), 1));
        }
        (crate::Monomial::from_pairs(pairs), ExactRational::ONE)
    });
    MultiPoly::from_terms(terms)
}

/// All coefficients of `Π_j (1 + θ_j t) Π_i Π_j (1 + (z_i + θ_j) t)`, indexed
/// by the power of `t`.
pub fn taut_chern_all(k: usize, r: usize) -> Vec<MultiPoly> {
    let mut roots = Vec::with_capacity(r * (k + 1));
    for j in 1..=r {
        roots.push(MultiPoly::var(SymbolId::theta(j)));
    }
    for i in 1..=k {
        for j in 1..=r {
            roots.push(&MultiPoly::var(SymbolId::z(i)) + &MultiPoly::var(SymbolId::theta(j)));
        }
    }
    let mut e = vec![MultiPoly::zero(); roots.len() + 1];
    e[0] = MultiPoly::one();
    for (n, x) in roots.iter().enumerate() {
        for j in (1..=n + 1).rev() {
            e[j] = e[j].add(&e[j - 1].mul(x));
        }
    }
    e
}

/// Coefficient of `t^i` in the tautological Chern polynomial.
pub fn taut_chern(i: usize, k: usize, r: usize) -> Result<MultiPoly, Error> {
    if i > r * (k + 1) {
        return Err(Error::OutOfRange(format!("c{i} with r(k+1) = {}", r * (k + 1))));
    }
    Ok(taut_chern_all(k, r).swap_remove(i))
}

/// `Π_i c_i^{e_i}` with the tautological Chern classes substituted.
pub fn chern_monomial_value(m: &ChernMonomial, k: usize, r: usize) -> Result<MultiPoly, Error> {
    if m.max_index() > r * (k + 1) {
        return Err(Error::OutOfRange(format!("c{} with r(k+1) = {}", m.max_index(), r * (k + 1))));
    }
    let c = taut_chern_all(k, r);
    let mut out = MultiPoly::one();
    for (&i, &e) in m.exponents() {
        out = out.mul(&c[i].pow(e));
    }
    Ok(out)
}

/// Segre classes from Chern classes: `(1 + c_1 + …)(1 + s_1 + …) = 1` up to
/// degree `n`.
pub fn segre_from_chern(c: &[MultiPoly], n: usize) -> Result<Vec<MultiPoly>, Error> {
    invert_series(c, n)
}

/// The inverse operation; the recursion is the same.
pub fn chern_from_segre(s: &[MultiPoly], n: usize) -> Result<Vec<MultiPoly>, Error> {
    invert_series(s, n)
}

fn invert_series(a: &[MultiPoly], n: usize) -> Result<Vec<MultiPoly>, Error> {
    if a.len() != n {
        return Err(Error::InvalidSpec(format!("expected {n} classes, got {}", a.len())));
    }
    // b_m = −Σ_{i=1}^{m} a_i b_{m−i}, with a_0 = b_0 = 1
    let mut b: Vec<MultiPoly> = vec![MultiPoly::one()];
    for m in 1..=n {
        let parts: Vec<MultiPoly> = (1..=m).map(|i| a[i - 1].mul(&b[m - i])).collect();
        b.push(MultiPoly::sum(&parts).neg());
    }
    b.remove(0);
    Ok(b)
}

/// The linear forms `z_i + z_j − z_l` with `i ≤ j`, `i + j ≤ l ≤ k`, ordered
/// by `(l, i, j)`.
pub fn denominator_forms(k: usize) -> Vec<LinearForm> {
    let mut out = Vec::new();
    for l in 1..=k {
        for i in 1..=l {
            for j in i..=l {
                if i + j <= l {
                    out.push(LinearForm::from_ints(k, &[(i, 1), (j, 1), (l, -1)]).expect("indices in range"));
                }
            }
        }
    }
    out
}

/// `Π_{i<j} (z_i − z_j)`.
pub fn vandermonde(k: usize) -> MultiPoly {
    let mut out = MultiPoly::one();
    for i in 1..=k {
        for j in i + 1..=k {
            out = out.mul(&(&MultiPoly::var(SymbolId::z(i)) - &MultiPoly::var(SymbolId::z(j))));
        }
    }
    out
}

/// The z-only part of the numerator, `(−1)^{nk} Π_{i<j}(z_i − z_j) Q_k(z)`.
pub fn integrand_prefactor(n: usize, k: usize) -> Result<MultiPoly, Error> {
    let q = qk_lookup(k)?;
    let mut out = vandermonde(k).mul(&q);
    if (n * k) % 2 == 1 {
        out = out.neg();
    }
    Ok(out)
}

/// The denominator: the linear forms once each and `z_i^{2n}` for every
/// `i`.
pub fn integrand_denominator(n: usize, k: usize) -> Vec<(LinearForm, u32)> {
    let mut den: Vec<(LinearForm, u32)> = denominator_forms(k).into_iter().map(|f| (f, 1)).collect();
    for i in 1..=k {
        den.push((LinearForm::z(i, k), 2 * n as u32));
    }
    den
}

/// The full residue integrand of a tautological integral.
pub fn build_integrand(spec: &IntegrandSpec) -> Result<ResidueForm, Error> {
    let (n, k, r) = (spec.n, spec.k, spec.r);
    let mut num = integrand_prefactor(n, k)?;
    num = num.mul(&chern_monomial_value(&spec.monomial, k, r)?);
    for i in 1..=k {
        num = num.mul(&segre_series(n, i));
    }
    ResidueForm::new(num, integrand_denominator(n, k), k)
}
