//! Fixed-point sums over ordered k-subsets of the torus weights λ, and the
//! residue form they are compared against.

use crate::poly::MultiPoly;
use crate::rational::ExactRational;
use crate::symbol::{Alphabet, SymbolId};
use crate::Error;

use super::{LinearForm, ResidueForm};

/// `Π_{a<b} (λ_a − λ_b)` over `a, b` in `idx` (in the given order).
fn vandermonde_lambda(idx: &[usize]) -> MultiPoly {
    let mut out = MultiPoly::one();
    for (i, &a) in idx.iter().enumerate() {
        for &b in &idx[i + 1..] {
            out = out.mul(&(&MultiPoly::var(SymbolId::lambda(a)) - &MultiPoly::var(SymbolId::lambda(b))));
        }
    }
    out
}

fn ordered_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in 1..=n {
            if !used[a - 1] {
                used[a - 1] = true;
                cur.push(a);
                go(n, k, cur, used, out);
                cur.pop();
                used[a - 1] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The fixed-point sum
/// `Σ_σ Q(λ_σ(1), …, λ_σ(k)) / Π_{m ≤ k} Π_{i > m} (λ_σ(i) − λ_σ(m))`
/// over ordered k-subsets, as `(numerator, denominator)` with denominator
/// `Π_{a<b} (λ_a − λ_b)`.
pub fn ab_sum(q: &MultiPoly, n: usize, k: usize) -> Result<(MultiPoly, MultiPoly), Error> {
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} > n = {n}")));
    }
    if let Some(s) = q.symbols().into_iter().find(|s| s.alphabet() == Alphabet::Z && s.index() > k) {
        return Err(Error::OutOfRange(format!("{s} with k = {k}")));
    }
    let delta = vandermonde_lambda(&(1..=n).collect::<Vec<_>>());
    let mut parts = Vec::new();
    for sigma in ordered_subsets(n, k) {
        let qs = q.rename(|s| {
            if s.alphabet() == Alphabet::Z {
                SymbolId::lambda(sigma[s.index() - 1])
            } else {
                s
            }
        });
        let rest: Vec<usize> = (1..=n).filter(|a| !sigma.contains(a)).collect();
        // orient every factor as λ_a − λ_b with a < b
        let mut flips = 0usize;
        for m in 0..k {
            flips += sigma[m + 1..].iter().filter(|&&x| x > sigma[m]).count();
            flips += rest.iter().filter(|&&x| x > sigma[m]).count();
        }
        let mut term = qs.mul(&vandermonde_lambda(&rest));
        if flips % 2 == 1 {
            term = term.neg();
        }
        parts.push(term);
    }
    Ok((MultiPoly::sum(&parts), delta))
}

/// `Π_{m<l} (z_m − z_l) · Q(z) / Π_l Π_i (λ_i − z_l)` as a residue form.
pub fn flag_residue_form(q: &MultiPoly, n: usize, k: usize) -> Result<ResidueForm, Error> {
    let mut num = q.clone();
    for m in 1..=k {
        for l in m + 1..=k {
            num = num.mul(&(&MultiPoly::var(SymbolId::z(m)) - &MultiPoly::var(SymbolId::z(l))));
        }
    }
    let mut den = Vec::new();
    for l in 1..=k {
        for i in 1..=n {
            let mut z = vec![ExactRational::ZERO; k];
            z[l - 1] = ExactRational::from_integer(-1);
            den.push((LinearForm::new(MultiPoly::var(SymbolId::lambda(i)), z)?, 1));
        }
    }
    ResidueForm::new(num, den, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::iterated_residue;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn two_term_sum() {
        // λ1/(λ2−λ1) + λ2/(λ1−λ2) = −1
        let (num, den) = ab_sum(&p("z1"), 2, 1).unwrap();
        assert_eq!(num, den.neg());
    }

    #[test]
    fn empty_products() {
        let (num, den) = ab_sum(&MultiPoly::one(), 1, 1).unwrap();
        assert_eq!((num, den), (MultiPoly::one(), MultiPoly::one()));
    }

    #[test]
    fn matches_residue_small() {
        let q = p("z1*z2");
        let (num, den) = ab_sum(&q, 3, 2).unwrap();
        let res = iterated_residue(&flag_residue_form(&q, 3, 2).unwrap()).unwrap();
        assert_eq!(num, res.mul(&den));
    }

    #[test]
    fn rejects_k_above_n() {
        assert!(ab_sum(&MultiPoly::one(), 2, 3).is_err());
    }
}
