//! Sparse multivariate polynomials over [`ExactRational`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::rational::ExactRational;
use crate::symbol::SymbolId;
use crate::Error;

/// A monomial: sorted `(symbol, exponent)` pairs with non-zero exponents,
/// each packed into one `u32` (symbol in the high half).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(SmallVec<[u32; 6]>);

#[inline]
fn pack(s: SymbolId, e: u32) -> u32 {
    debug_assert!(e > 0 && e <= u16::MAX as u32, "exponent {e} out of range");
    ((s.raw() as u32) << 16) | e
}

#[inline]
fn unpack(w: u32) -> (SymbolId, u32) {
    (SymbolId::from_raw((w >> 16) as u16), w & 0xffff)
}

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(s: SymbolId, e: u32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial(smallvec::smallvec![pack(s, e)])
        }
    }

    /// Builds a monomial from arbitrary pairs, merging repeated symbols.
    pub fn from_pairs<I: IntoIterator<Item = (SymbolId, u32)>>(pairs: I) -> Self {
        let mut v: Vec<(SymbolId, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        v.sort_by_key(|&(s, _)| s);
        let mut out: SmallVec<[u32; 6]> = SmallVec::new();
        let mut i = 0;
        while i < v.len() {
            let s = v[i].0;
            let mut e = 0;
            while i < v.len() && v[i].0 == s {
                e += v[i].1;
                i += 1;
            }
            out.push(pack(s, e));
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (SymbolId, u32)> + '_ {
        self.0.iter().map(|&w| unpack(w))
    }

    pub fn exponent(&self, s: SymbolId) -> u32 {
        self.iter().find(|&(t, _)| t == s).map_or(0, |(_, e)| e)
    }

    /// Total degree under the symbol grading.
    pub fn graded_degree(&self) -> u32 {
        self.iter().map(|(s, e)| s.degree() * e).sum()
    }

    /// Additive weight of the monomial under a per-symbol weight function.
    pub fn weight(&self, w: impl Fn(SymbolId) -> u32) -> u32 {
        self.iter().map(|(s, e)| w(s) * e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out: SmallVec<[u32; 6]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (sa, sb) = (a[i] >> 16, b[j] >> 16);
            if sa == sb {
                let e = (a[i] & 0xffff) + (b[j] & 0xffff);
                assert!(e <= u16::MAX as u32, "exponent overflow");
                out.push((sa << 16) | e);
                i += 1;
                j += 1;
            } else if sa < sb {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Removes `s` from the monomial, returning its former exponent.
    pub fn split_off(&self, s: SymbolId) -> (u32, Monomial) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .copied()
            .filter(|&w| {
                let (t, x) = unpack(w);
                if t == s {
                    e = x;
                    false
                } else {
                    true
                }
            })
            .collect();
        (e, Monomial(rest))
    }

    /// Keeps the symbols accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(SymbolId) -> bool) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&w| keep(unpack(w).0)).collect())
    }

    /// Applies a symbol renaming. The map must be injective on the symbols
    /// present.
    pub fn rename(&self, f: impl Fn(SymbolId) -> SymbolId) -> Monomial {
        Monomial::from_pairs(self.iter().map(|(s, e)| (f(s), e)))
    }

    pub fn symbols(&self) -> impl Iterator<Item = SymbolId> + '_ {
        self.iter().map(|(s, _)| s)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, (s, e)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses the [`Display`](fmt::Display) form, e.g. `s1^2*cF1` or `1`.
impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "1" {
            return Ok(Monomial::one());
        }
        let mut pairs = Vec::new();
        for factor in t.split('*') {
            let factor = factor.trim();
            let (sym, exp) = match factor.split_once('^') {
                Some((a, b)) => (
                    a.trim(),
                    b.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{s}`")))?,
                ),
                None => (factor, 1),
            };
            let sym: SymbolId = sym.parse().map_err(|e| Error::Parse(format!("{e} in `{s}`")))?;
            pairs.push((sym, exp));
        }
        Ok(Monomial::from_pairs(pairs))
    }
}

/// Result of [`MultiPoly::graded_degree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradedDegree {
    /// Every term has this degree (the zero polynomial reports 0).
    Homogeneous(u32),
    Nonhomogeneous,
}

/// A sparse polynomial in canonical form: terms sorted by monomial, no zero
/// coefficients. Structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<(Monomial, ExactRational)>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::ONE)
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: ExactRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MultiPoly { terms: vec![(m, c)] }
        }
    }

    pub fn var(s: SymbolId) -> Self {
        Self::term(Monomial::var(s, 1), ExactRational::ONE)
    }

    /// Collects arbitrary terms, combining duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, ExactRational)>>(terms: I) -> Self {
        let mut acc: FxHashMap<Monomial, ExactRational> = FxHashMap::default();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(x) => *x += &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(acc)
    }

    fn from_map(acc: FxHashMap<Monomial, ExactRational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, ExactRational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, ExactRational)> {
        self.terms
    }

    /// The constant term, if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<ExactRational> {
        match self.terms.as_slice() {
            [] => Some(ExactRational::ZERO),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> ExactRational {
        self.terms
            .binary_search_by(|(t, _)| t.cmp(m))
            .map_or(ExactRational::ZERO, |i| self.terms[i].1.clone())
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        // Multiplying by a monomial is injective, so only re-sorting is needed.
        let mut terms: Vec<_> = self.terms.iter().map(|(t, x)| (t.mul(m), x * c)).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        MultiPoly { terms }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        MultiPoly { terms: out }
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.mul_filtered(other, |_| true)
    }

    /// Product keeping only the terms whose additive `weight` is at most
    /// `max`. Exact as long as the weight is non-negative on every symbol.
    pub fn mul_bounded(
        &self,
        other: &MultiPoly,
        weight: impl Fn(SymbolId) -> u32,
        max: u32,
    ) -> MultiPoly {
        let wa: Vec<u32> = self.terms.iter().map(|(m, _)| m.weight(&weight)).collect();
        let wb: Vec<u32> = other.terms.iter().map(|(m, _)| m.weight(&weight)).collect();
        let mut acc: FxHashMap<Monomial, ExactRational> = FxHashMap::default();
        for (i, (ma, ca)) in self.terms.iter().enumerate() {
            for (j, (mb, cb)) in other.terms.iter().enumerate() {
                if wa[i] + wb[j] > max {
                    continue;
                }
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(x) => *x += &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(acc)
    }

    fn mul_filtered(&self, other: &MultiPoly, keep: impl Fn(&Monomial) -> bool) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        let mut acc: FxHashMap<Monomial, ExactRational> =
            FxHashMap::with_capacity_and_hasher(self.len().max(other.len()) * 2, Default::default());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if !keep(&m) {
                    continue;
                }
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(x) => *x += &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(acc)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Keeps the terms accepted by `keep`.
    pub fn retain(&self, keep: impl Fn(&Monomial) -> bool) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().filter(|(m, _)| keep(m)).cloned().collect(),
        }
    }

    /// Highest exponent of `s` in any term (0 for constants and zero).
    pub fn degree_in(&self, s: SymbolId) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(s)).max().unwrap_or(0)
    }

    pub fn contains_symbol(&self, pred: impl Fn(SymbolId) -> bool) -> bool {
        self.terms.iter().any(|(m, _)| m.symbols().any(&pred))
    }

    /// Sorted list of distinct symbols occurring in the polynomial.
    pub fn symbols(&self) -> Vec<SymbolId> {
        let mut v: Vec<_> = self.terms.iter().flat_map(|(m, _)| m.symbols()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// The coefficient of `var^power`, viewing `self` as a polynomial in
    /// `var` over the remaining symbols.
    pub fn coefficient_of(&self, var: SymbolId, power: u32) -> MultiPoly {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let (e, rest) = m.split_off(var);
            (e == power).then(|| (rest, c.clone()))
        });
        MultiPoly::from_terms(terms)
    }

    /// Splits into `Σ_d coeff_d · var^d`, returned as `(d, coeff_d)` pairs
    /// sorted by `d`.
    pub fn split_by(&self, var: SymbolId) -> Vec<(u32, MultiPoly)> {
        let mut buckets: std::collections::BTreeMap<u32, Vec<(Monomial, ExactRational)>> =
            Default::default();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(var);
            buckets.entry(e).or_default().push((rest, c.clone()));
        }
        buckets
            .into_iter()
            .map(|(d, mut ts)| {
                // removing one symbol keeps monomials distinct and preserves
                // relative order only within a fixed exponent, so re-sort
                ts.sort_unstable_by(|a, b| a.0.cmp(&b.0));
                (d, MultiPoly { terms: ts })
            })
            .collect()
    }

    /// Degree under the symbol grading, or `Nonhomogeneous`.
    pub fn graded_degree(&self) -> GradedDegree {
        let mut degs = self.terms.iter().map(|(m, _)| m.graded_degree());
        match degs.next() {
            None => GradedDegree::Homogeneous(0),
            Some(d) => {
                if degs.all(|x| x == d) {
                    GradedDegree::Homogeneous(d)
                } else {
                    GradedDegree::Nonhomogeneous
                }
            }
        }
    }

    /// Substitutes polynomials for symbols. Symbols not handled by `f`
    /// (where it returns `None`) are kept.
    pub fn substitute(&self, f: impl Fn(SymbolId) -> Option<MultiPoly>) -> MultiPoly {
        let mut cache: FxHashMap<(SymbolId, u32), MultiPoly> = FxHashMap::default();
        let mut out = MultiPoly::zero();
        let mut pending: Vec<(Monomial, ExactRational)> = Vec::new();
        for (m, c) in &self.terms {
            let mut keep = Vec::new();
            let mut factor = MultiPoly::constant(c.clone());
            let mut touched = false;
            for (s, e) in m.iter() {
                match f(s) {
                    Some(p) => {
                        touched = true;
                        let pe = cache.entry((s, e)).or_insert_with(|| p.pow(e)).clone();
                        factor = factor.mul(&pe);
                    }
                    None => keep.push((s, e)),
                }
            }
            if touched {
                out = out.add(&factor.mul_monomial(&Monomial::from_pairs(keep), &ExactRational::ONE));
            } else {
                pending.push((m.clone(), c.clone()));
            }
        }
        out.add(&MultiPoly::from_terms(pending))
    }

    /// Renames symbols through an injective map.
    pub fn rename(&self, f: impl Fn(SymbolId) -> SymbolId) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (m.rename(&f), c.clone())))
    }

    /// Sum of several polynomials, merged in one pass.
    pub fn sum<'a, I: IntoIterator<Item = &'a MultiPoly>>(polys: I) -> MultiPoly {
        MultiPoly::from_terms(polys.into_iter().flat_map(|p| p.terms.iter().cloned()))
    }
}

/// The elementary symmetric polynomial `e_m` of the given variables.
pub fn elementary_symmetric(m: usize, vars: &[SymbolId]) -> Result<MultiPoly, Error> {
    if m > vars.len() {
        return Err(Error::OutOfRange(format!(
            "e_{m} of {} variables",
            vars.len()
        )));
    }
    // dp[j] = e_j of the variables seen so far
    let mut dp = vec![MultiPoly::zero(); m + 1];
    dp[0] = MultiPoly::one();
    for &v in vars {
        let x = MultiPoly::var(v);
        for j in (1..=m).rev() {
            dp[j] = dp[j].add(&dp[j - 1].mul(&x));
        }
    }
    Ok(dp.swap_remove(m))
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses sums of `coefficient*monomial` terms, e.g. `2*z1 + z2 - z4` or
/// `-1/2*s1^2*cF1 + 3`.
impl FromStr for MultiPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut terms = Vec::new();
        let mut cur = String::new();
        let mut sign = 1i64;
        let flush = |cur: &mut String, sign: i64, terms: &mut Vec<(Monomial, ExactRational)>| -> Result<(), Error> {
            let t = cur.trim();
            if t.is_empty() {
                return Ok(());
            }
            let mut coeff = ExactRational::from_integer(sign);
            let mut factors = Vec::new();
            for f in t.split('*') {
                let f = f.trim();
                if f.starts_with(|c: char| c.is_ascii_digit()) && !f.contains('^') {
                    let q: ExactRational = f.parse().map_err(|e| Error::Parse(format!("{e}")))?;
                    coeff *= &q;
                } else {
                    factors.push(f);
                }
            }
            let m = if factors.is_empty() {
                Monomial::one()
            } else {
                factors.join("*").parse()?
            };
            terms.push((m, coeff));
            cur.clear();
            Ok(())
        };
        let t = s.trim();
        if t == "0" {
            return Ok(MultiPoly::zero());
        }
        for ch in t.chars() {
            match ch {
                '+' | '-' => {
                    if !cur.trim().is_empty() {
                        flush(&mut cur, sign, &mut terms)?;
                        sign = 1;
                    }
                    if ch == '-' {
                        sign = -sign;
                    }
                }
                c if c.is_whitespace() => cur.push(' '),
                c => cur.push(c),
            }
        }
        if cur.trim().is_empty() {
            return Err(Error::Parse(format!("dangling operator in `{s}`")));
        }
        flush(&mut cur, sign, &mut terms)?;
        Ok(MultiPoly::from_terms(terms))
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident) => {
        impl<'a> $tr<&'a MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                MultiPoly::$m(self, rhs)
            }
        }
    };
}
poly_binop!(Add, add);
poly_binop!(Sub, sub);
poly_binop!(Mul, mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}


impl From<ExactRational> for MultiPoly {
    fn from(c: ExactRational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::constant(ExactRational::from_integer(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::SymbolId as S;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&p("z1 + 1") + &p("-z1"), p("1"));
        assert_eq!(&MultiPoly::zero() + &p("z1*s2 - 3"), p("z1*s2 - 3"));
        assert!((&p("z1 - z2") + &p("z2 - z1")).terms().is_empty());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p("z1 - z2") * &p("z1 + z2"), p("z1^2 - z2^2"));
        assert_eq!(&MultiPoly::one() * &p("theta1*z3 + 2"), p("theta1*z3 + 2"));
        assert_eq!(&p("2*z1 + z2 - z4") * &MultiPoly::one(), p("2*z1 + z2 - z4"));
    }

    #[test]
    fn elementary_symmetric_examples() {
        let z = [S::z(1), S::z(2), S::z(3)];
        assert_eq!(elementary_symmetric(0, &z[..2]).unwrap(), MultiPoly::one());
        assert_eq!(elementary_symmetric(1, &z).unwrap(), p("z1 + z2 + z3"));
        assert_eq!(elementary_symmetric(2, &z).unwrap(), p("z1*z2 + z1*z3 + z2*z3"));
        assert!(matches!(elementary_symmetric(4, &z), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn coefficient_of_examples() {
        assert_eq!(p("z1^2 + 3*z1*z2").coefficient_of(S::z(1), 1), p("3*z2"));
        assert_eq!(p("5").coefficient_of(S::z(1), 0), p("5"));
        assert!(p("z1^2").coefficient_of(S::z(1), 3).is_zero());
    }

    #[test]
    fn graded_degree_examples() {
        assert_eq!(p("z1*s2").graded_degree(), GradedDegree::Homogeneous(3));
        assert_eq!(p("z1 + z2").graded_degree(), GradedDegree::Homogeneous(1));
        assert_eq!(p("z1 + s2").graded_degree(), GradedDegree::Nonhomogeneous);
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["0", "1", "-1/2*s1^2*cF1 + 3", "z1 - z2", "2*z1 + z2 - z4"] {
            let q = p(s);
            assert_eq!(p(&q.to_string()), q);
        }
        assert_eq!(p("-z1 - -z2"), p("z2 - z1"));
        assert!("z1 +".parse::<MultiPoly>().is_err());
        assert!("q1".parse::<MultiPoly>().is_err());
    }

    #[test]
    fn substitute_and_split() {
        let q = p("z1^2*theta1 + z1 + 4");
        let r = q.substitute(|s| (s == S::z(1)).then(|| p("theta1 + 1")));
        assert_eq!(r, p("theta1^3 + 2*theta1^2 + 2*theta1 + 5"));
        let parts = q.split_by(S::z(1));
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[2], (2, p("theta1")));
    }

    #[test]
    fn bounded_product_drops_heavy_terms() {
        let a = p("s1 + z1");
        let b = p("s2 + z2");
        let nonz = |s: SymbolId| if s.alphabet() == crate::Alphabet::Z { 0 } else { s.degree() };
        assert_eq!(a.mul_bounded(&b, nonz, 2), p("s2*z1 + z1*z2 + s1*z2"));
    }
}
