//! Rational forms with affine-linear denominators and their iterated
//! residues at infinity.
//!
//! A [`ResidueForm`] denotes `numerator / Π ω_i^{μ_i}` expanded in the domain
//! `|z_1| ≪ … ≪ |z_k|`. Residues are taken one variable at a time, from
//! `z_k` down to `z_1`; each step keeps the form inside the same class.

pub mod localization;
pub mod vanishing;

use std::fmt;

use crate::poly::{Monomial, MultiPoly};
use crate::rational::ExactRational;
use crate::symbol::{Alphabet, SymbolId};
use crate::Error;

/// Sign applied by every one-variable extraction. With this value
/// `Res dz/(z_1⋯z_k) = (−1)^k`.
pub const ORIENTATION_SIGN: i64 = -1;

/// `constant + Σ zcoeffs[i-1]·z_i`, with a z-free constant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    constant: MultiPoly,
    zcoeffs: Vec<ExactRational>,
}

impl LinearForm {
    pub fn new(constant: MultiPoly, zcoeffs: Vec<ExactRational>) -> Result<Self, Error> {
        if constant.contains_symbol(|s| s.alphabet() == Alphabet::Z) {
            return Err(Error::InvalidSpec(format!(
                "linear form constant {constant} contains a z variable"
            )));
        }
        if zcoeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidSpec("linear form without z variables".into()));
        }
        Ok(LinearForm { constant, zcoeffs })
    }

    /// A form without constant term from `(index, coefficient)` pairs.
    pub fn from_ints(nvars: usize, coeffs: &[(usize, i64)]) -> Result<Self, Error> {
        let mut z = vec![ExactRational::ZERO; nvars];
        for &(i, c) in coeffs {
            if i == 0 || i > nvars {
                return Err(Error::OutOfRange(format!("z{i} with k = {nvars}")));
            }
            z[i - 1] += &ExactRational::from_integer(c);
        }
        LinearForm::new(MultiPoly::zero(), z)
    }

    /// The coordinate form `z_i`.
    pub fn z(i: usize, nvars: usize) -> Self {
        LinearForm::from_ints(nvars, &[(i, 1)]).expect("index in range")
    }

    /// Reads a form off a polynomial of degree one in the z variables.
    pub fn from_poly(p: &MultiPoly, nvars: usize) -> Result<Self, Error> {
        let mut z = vec![ExactRational::ZERO; nvars];
        let mut constant = Vec::new();
        for (m, c) in p.terms() {
            let zs: Vec<_> = m.iter().filter(|(s, _)| s.alphabet() == Alphabet::Z).collect();
            match zs.as_slice() {
                [] => constant.push((m.clone(), c.clone())),
                [(s, 1)] if m.iter().count() == 1 && s.index() <= nvars => {
                    z[s.index() - 1] += c;
                }
                _ => return Err(Error::InvalidSpec(format!("{p} is not affine-linear in z"))),
            }
        }
        LinearForm::new(MultiPoly::from_terms(constant), z)
    }

    pub fn nvars(&self) -> usize {
        self.zcoeffs.len()
    }

    pub fn constant(&self) -> &MultiPoly {
        &self.constant
    }

    pub fn zcoeffs(&self) -> &[ExactRational] {
        &self.zcoeffs
    }

    /// Coefficient of `z_i` (1-based).
    pub fn coeff(&self, i: usize) -> &ExactRational {
        &self.zcoeffs[i - 1]
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i <= self.zcoeffs.len() && !self.zcoeffs[i - 1].is_zero()
    }

    /// Largest index with a non-zero z coefficient.
    pub fn leading_var(&self) -> usize {
        self.zcoeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .map(|i| i + 1)
            .expect("linear form has a z term")
    }

    pub fn to_poly(&self) -> MultiPoly {
        let zs = self.zcoeffs.iter().enumerate().map(|(i, c)| {
            (Monomial::var(SymbolId::z(i + 1), 1), c.clone())
        });
        MultiPoly::from_terms(zs.chain(self.constant.terms().iter().cloned()))
    }

    /// Reindexes the z variables: `z_i` becomes `z_{perm[i-1]}`.
    fn permute(&self, perm: &[usize]) -> LinearForm {
        let mut z = vec![ExactRational::ZERO; self.zcoeffs.len()];
        for (i, c) in self.zcoeffs.iter().enumerate() {
            z[perm[i] - 1] = c.clone();
        }
        LinearForm { constant: self.constant.clone(), zcoeffs: z }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // z terms first, as written by hand
        let mut parts = MultiPoly::zero();
        for (i, c) in self.zcoeffs.iter().enumerate() {
            parts = parts.add(&MultiPoly::term(Monomial::var(SymbolId::z(i + 1), 1), c.clone()));
        }
        if self.constant.is_zero() {
            write!(f, "{parts}")
        } else {
            write!(f, "{parts} + ({})", self.constant)
        }
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `numerator / Π factor^mult` in the variables `z_1..z_nvars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueForm {
    numerator: MultiPoly,
    denominator: Vec<(LinearForm, u32)>,
    nvars: usize,
}

impl ResidueForm {
    /// Builds a form, merging repeated denominator factors.
    pub fn new(
        numerator: MultiPoly,
        denominator: Vec<(LinearForm, u32)>,
        nvars: usize,
    ) -> Result<Self, Error> {
        if let Some(s) = numerator
            .symbols()
            .into_iter()
            .find(|s| s.alphabet() == Alphabet::Z && s.index() > nvars)
        {
            return Err(Error::OutOfRange(format!("{s} with k = {nvars}")));
        }
        let mut merged: Vec<(LinearForm, u32)> = Vec::new();
        for (form, mult) in denominator {
            if form.nvars() != nvars {
                return Err(Error::InvalidSpec(format!(
                    "factor {form} has {} variables, expected {nvars}",
                    form.nvars()
                )));
            }
            if mult == 0 {
                continue;
            }
            match merged.iter_mut().find(|(f, _)| *f == form) {
                Some((_, m)) => *m += mult,
                None => merged.push((form, mult)),
            }
        }
        Ok(ResidueForm { numerator, denominator: merged, nvars })
    }

    /// A form with only monomial denominators `z_i^{mult_i}`.
    pub fn monomial_denominator(numerator: MultiPoly, exps: &[u32]) -> Result<Self, Error> {
        let k = exps.len();
        let den = exps
            .iter()
            .enumerate()
            .map(|(i, &e)| (LinearForm::z(i + 1, k), e))
            .collect();
        ResidueForm::new(numerator, den, k)
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &[(LinearForm, u32)] {
        &self.denominator
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Total multiplicity of the denominator, which is also its degree.
    pub fn denominator_degree(&self) -> u32 {
        self.denominator.iter().map(|(_, m)| m).sum()
    }

    /// Denominator factors as a flat list, repeated by multiplicity.
    pub fn denominator_factors(&self) -> Vec<LinearForm> {
        self.denominator
            .iter()
            .flat_map(|(f, m)| std::iter::repeat(f.clone()).take(*m as usize))
            .collect()
    }

    /// Applies a permutation of the z variables (`z_i ↦ z_{perm[i-1]}`).
    pub fn permute(&self, perm: &[usize]) -> Result<ResidueForm, Error> {
        let k = self.nvars;
        let mut seen = vec![false; k];
        if perm.len() != k || perm.iter().any(|&p| p == 0 || p > k || std::mem::replace(&mut seen[p - 1], true)) {
            return Err(Error::InvalidSpec(format!("{perm:?} is not a permutation of 1..{k}")));
        }
        let num = self.numerator.rename(|s| {
            if s.alphabet() == Alphabet::Z {
                SymbolId::z(perm[s.index() - 1])
            } else {
                s
            }
        });
        let den = self.denominator.iter().map(|(f, m)| (f.permute(perm), *m)).collect();
        ResidueForm::new(num, den, k)
    }
}

impl fmt::Display for ResidueForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / (", self.numerator)?;
        for (i, (form, m)) in self.denominator.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            write!(f, "({form})^{m}")?;
        }
        if self.denominator.is_empty() {
            write!(f, "1")?;
        }
        write!(f, ")")
    }
}

/// Truncated power series in `1/z_m` with polynomial coefficients.
fn series_mul(a: &[MultiPoly], b: &[MultiPoly], len: usize) -> Vec<MultiPoly> {
    (0..len)
        .map(|j| {
            let parts: Vec<MultiPoly> = (0..=j)
                .filter(|&i| i < a.len() && j - i < b.len())
                .map(|i| a[i].mul(&b[j - i]))
                .collect();
            MultiPoly::sum(&parts)
        })
        .collect()
}

/// The z_m-free expansion data of one denominator factor `a·z_m + ρ`,
/// raised to `-μ`: coefficients `(−1)^j C(μ+j−1, j) (ρ/a)^j` for `j < len`.
fn factor_series(form: &LinearForm, m: usize, mult: u32, len: usize) -> Vec<MultiPoly> {
    let a = form.coeff(m).clone();
    let rest = LinearForm {
        constant: form.constant.clone(),
        zcoeffs: form
            .zcoeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i + 1 == m { ExactRational::ZERO } else { c.clone() })
            .collect(),
    };
    let x = rest.to_poly().scale(&a.recip());
    let mut out = Vec::with_capacity(len);
    let mut xp = MultiPoly::one();
    for j in 0..len {
        let mut c = ExactRational::binomial(mult as u64 + j as u64 - 1, j as u64);
        if j % 2 == 1 {
            c = -c;
        }
        out.push(xp.scale(&c));
        if j + 1 < len {
            xp = xp.mul(&x);
        }
    }
    out
}

/// Coefficient of `z_m^{-1}` (times [`ORIENTATION_SIGN`]) of the expansion of
/// `f` at `|z_m| → ∞`, all lower variables held bounded.
///
/// Every factor involving `z_m` must have `z_m` as its leading variable.
pub fn residue_one_var(f: &ResidueForm, m: usize) -> Result<ResidueForm, Error> {
    if m == 0 || m > f.nvars {
        return Err(Error::OutOfRange(format!("z{m} with k = {}", f.nvars)));
    }
    let zm = SymbolId::z(m);
    let (active, kept): (Vec<_>, Vec<_>) =
        f.denominator.iter().cloned().partition(|(form, _)| form.contains(m));
    if let Some((bad, _)) = active.iter().find(|(form, _)| form.leading_var() != m) {
        return Err(Error::Precondition(format!(
            "factor {bad} contains z{m} but has leading variable z{}",
            bad.leading_var()
        )));
    }
    let total: u32 = active.iter().map(|(_, mu)| mu).sum();
    let parts = f.numerator.split_by(zm);
    let dmax = parts.last().map_or(0, |(d, _)| *d);
    let zero = || ResidueForm { numerator: MultiPoly::zero(), denominator: kept.clone(), nvars: f.nvars };
    if f.numerator.is_zero() || (dmax as i64) + 1 - (total as i64) < 0 {
        return Ok(zero());
    }
    let len = (dmax + 2 - total) as usize;

    let mut series = vec![MultiPoly::zero(); len];
    series[0] = MultiPoly::one();
    let mut scale = ExactRational::from_integer(ORIENTATION_SIGN);
    for (form, mu) in &active {
        series = series_mul(&series, &factor_series(form, m, *mu, len), len);
        scale *= &form.coeff(m).powi(-(*mu as i64));
    }

    let contributions: Vec<MultiPoly> = parts
        .iter()
        .filter(|(d, _)| d + 1 >= total)
        .map(|(d, nd)| nd.mul(&series[(d + 1 - total) as usize]))
        .collect();
    let numerator = MultiPoly::sum(&contributions).scale(&scale);
    Ok(ResidueForm { numerator, denominator: kept, nvars: f.nvars })
}

/// Iterated residue in the order `z_k, z_{k-1}, …, z_1`.
pub fn iterated_residue(f: &ResidueForm) -> Result<MultiPoly, Error> {
    let mut cur = f.clone();
    for m in (1..=f.nvars).rev() {
        cur = residue_one_var(&cur, m)?;
    }
    if !cur.denominator.is_empty() {
        return Err(Error::Internal(format!("denominator survived the residue: {cur}")));
    }
    Ok(cur.numerator)
}

/// Iterated residue taking the variables in the listed order (the first
/// entry is treated as the largest).
pub fn iterated_residue_in_order(f: &ResidueForm, order: &[usize]) -> Result<MultiPoly, Error> {
    let k = f.nvars;
    if order.len() != k {
        return Err(Error::InvalidSpec(format!("order {order:?} for k = {k}")));
    }
    // the t-th processed variable becomes z_{k-t}
    let mut perm = vec![0; k];
    for (t, &v) in order.iter().enumerate() {
        if v == 0 || v > k {
            return Err(Error::OutOfRange(format!("z{v} with k = {k}")));
        }
        perm[v - 1] = k - t;
    }
    let relabeled = f.permute(&perm)?;
    let res = iterated_residue(&relabeled)?;
    Ok(res)
}
