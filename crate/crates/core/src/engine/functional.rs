//! The iterated residue as a linear functional on z-monomials.
//!
//! For a fixed denominator made of homogeneous linear forms, the residue of
//! `z^β / D` is a rational number. It is computed one variable at a time
//! with the same one-variable extraction as [`residue_one_var`], and
//! memoized per level, so that a numerator with many coefficient symbols
//! never has to be carried through the intermediate steps.

use std::sync::Arc;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::poly::{Monomial, MultiPoly};
use crate::rational::ExactRational;
use crate::residue::{residue_one_var, LinearForm, ResidueForm};
use crate::symbol::{Alphabet, SymbolId};
use crate::Error;

type Key = SmallVec<[u32; 6]>;

pub struct ResidueFunctional {
    k: usize,
    /// `levels[m-1]`: factors whose leading variable is `z_m`.
    levels: Vec<Vec<(LinearForm, u32)>>,
    /// Degree of the product of the factors with leading variable `≤ m`.
    cumulative: Vec<u32>,
    /// Residue in `z_m` of `z_m^d` over the level-`m` factors, as exponent
    /// vectors in `z_1..z_{m-1}`.
    steps: Vec<FxHashMap<u32, Arc<Vec<(Key, ExactRational)>>>>,
    memo: Vec<FxHashMap<Key, ExactRational>>,
}

impl ResidueFunctional {
    /// The denominator factors must be homogeneous (no constant terms).
    pub fn new(denominator: &[(LinearForm, u32)], k: usize) -> Result<Self, Error> {
        let mut levels = vec![Vec::new(); k];
        for (form, mult) in denominator {
            if !form.constant().is_zero() {
                return Err(Error::InvalidSpec(format!("factor {form} is not homogeneous")));
            }
            if form.nvars() != k {
                return Err(Error::InvalidSpec(format!("factor {form} has the wrong arity")));
            }
            levels[form.leading_var() - 1].push((form.clone(), *mult));
        }
        let mut cumulative = Vec::with_capacity(k);
        let mut acc = 0;
        for level in &levels {
            acc += level.iter().map(|(_, m)| m).sum::<u32>();
            cumulative.push(acc);
        }
        Ok(ResidueFunctional {
            k,
            levels,
            cumulative,
            steps: vec![FxHashMap::default(); k],
            memo: vec![FxHashMap::default(); k],
        })
    }

    pub fn nvars(&self) -> usize {
        self.k
    }

    /// Number of memoized values per level, `z_1` first.
    pub fn memo_sizes(&self) -> Vec<usize> {
        self.memo.iter().map(|m| m.len()).collect()
    }

    fn step(&mut self, m: usize, d: u32) -> Result<Arc<Vec<(Key, ExactRational)>>, Error> {
        if !self.steps[m - 1].contains_key(&d) {
            let form = ResidueForm::new(
                MultiPoly::term(Monomial::var(SymbolId::z(m), d), ExactRational::ONE),
                self.levels[m - 1].clone(),
                self.k,
            )?;
            let res = residue_one_var(&form, m)?;
            let terms: Vec<_> = res
                .numerator()
                .terms()
                .iter()
                .map(|(mono, c)| {
                    let mut key: Key = SmallVec::from_elem(0, m - 1);
                    for (s, e) in mono.iter() {
                        key[s.index() - 1] = e;
                    }
                    (key, c.clone())
                })
                .collect();
            self.steps[m - 1].insert(d, Arc::new(terms));
        }
        Ok(self.steps[m - 1][&d].clone())
    }

    fn rho(&mut self, beta: &[u32]) -> Result<ExactRational, Error> {
        let m = beta.len();
        if m == 0 {
            return Ok(ExactRational::ONE);
        }
        // a homogeneous form has a non-zero residue only in degree −m
        let deg: u32 = beta.iter().sum();
        if deg + m as u32 != self.cumulative[m - 1] {
            return Ok(ExactRational::ZERO);
        }
        if let Some(v) = self.memo[m - 1].get(beta) {
            return Ok(v.clone());
        }
        let step = self.step(m, beta[m - 1])?;
        let mut acc = ExactRational::ZERO;
        let mut next: Key = SmallVec::from_slice(&beta[..m - 1]);
        for (gamma, c) in step.iter() {
            for i in 0..m - 1 {
                next[i] = beta[i] + gamma[i];
            }
            let v = self.rho(&next)?;
            if !v.is_zero() {
                acc += &(c * &v);
            }
        }
        self.memo[m - 1].insert(SmallVec::from_slice(beta), acc.clone());
        Ok(acc)
    }

    /// Iterated residue of `z^β / D`.
    pub fn eval(&mut self, beta: &[u32]) -> Result<ExactRational, Error> {
        if beta.len() != self.k {
            return Err(Error::InvalidSpec(format!("exponent of length {} for k = {}", beta.len(), self.k)));
        }
        self.rho(beta)
    }

    /// Iterated residue of `p / D`, by linearity over the non-z symbols.
    pub fn eval_poly(&mut self, p: &MultiPoly) -> Result<MultiPoly, Error> {
        let mut out = Vec::new();
        for (mono, c) in p.terms() {
            let mut beta = vec![0u32; self.k];
            for (s, e) in mono.iter() {
                if s.alphabet() == Alphabet::Z {
                    if s.index() > self.k {
                        return Err(Error::OutOfRange(format!("{s} with k = {}", self.k)));
                    }
                    beta[s.index() - 1] = e;
                }
            }
            let v = self.rho(&beta)?;
            if !v.is_zero() {
                out.push((mono.filter(|s| s.alphabet() != Alphabet::Z), c * &v));
            }
        }
        Ok(MultiPoly::from_terms(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::iterated_residue;

    #[test]
    fn agrees_with_stepwise_residue() {
        let k = 3;
        let den = crate::classes::integrand_denominator(2, k);
        let mut f = ResidueFunctional::new(&den, k).unwrap();
        let num: MultiPoly = "z1^5*z2^4*z3^3 + 3*s1*z1^4*z2^5*z3^3 - z1^2*z2^6*z3^4*theta1 + z3^12 + 2*z1^3*z2^3*z3^3".parse().unwrap();
        let direct = iterated_residue(&ResidueForm::new(num.clone(), den.clone(), k).unwrap()).unwrap();
        assert_eq!(f.eval_poly(&num).unwrap(), direct);
    }
}
