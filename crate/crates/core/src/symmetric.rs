//! Rewriting θ-symmetric polynomials in Chern classes of the twisting bundle.

use std::collections::BTreeMap;

use crate::poly::{elementary_symmetric, Monomial, MultiPoly};
use crate::rational::ExactRational;
use crate::symbol::{Alphabet, SymbolId};
use crate::Error;

type ThetaExp = Vec<u32>;

/// Splits `p` into `θ-exponent vector -> coefficient` where the coefficients
/// are θ-free.
fn split_theta(p: &MultiPoly, r: usize) -> Result<BTreeMap<ThetaExp, Vec<(Monomial, ExactRational)>>, Error> {
    let mut out: BTreeMap<ThetaExp, Vec<(Monomial, ExactRational)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut exp = vec![0u32; r];
        for (s, e) in m.iter() {
            if s.alphabet() == Alphabet::Theta {
                if s.index() > r {
                    return Err(Error::OutOfRange(format!("{s} with r = {r}")));
                }
                exp[s.index() - 1] = e;
            }
        }
        let rest = m.filter(|s| s.alphabet() != Alphabet::Theta);
        out.entry(exp).or_default().push((rest, c.clone()));
    }
    Ok(out)
}

/// Checks invariance under every adjacent transposition θ_i ↔ θ_{i+1},
/// which generate the full symmetric group.
pub fn is_theta_symmetric(p: &MultiPoly, r: usize) -> bool {
    (1..r).all(|i| {
        let swapped = p.rename(|s| {
            if s.alphabet() != Alphabet::Theta {
                s
            } else if s.index() == i {
                SymbolId::theta(i + 1)
            } else if s.index() == i + 1 {
                SymbolId::theta(i)
            } else {
                s
            }
        });
        &swapped == p
    })
}

/// Rewrites a polynomial symmetric in θ_1..θ_r as a polynomial in
/// c_1(F)..c_r(F), where c_j(F) stands for e_j(θ).
pub fn reduce_theta_symmetric(p: &MultiPoly, r: usize) -> Result<MultiPoly, Error> {
    if r == 0 {
        if p.contains_symbol(|s| s.alphabet() == Alphabet::Theta) {
            return Err(Error::OutOfRange("theta symbols with r = 0".into()));
        }
        return Ok(p.clone());
    }
    let mut rest = split_theta(p, r)?;
    if !is_theta_symmetric(p, r) {
        return Err(Error::NotSymmetric(p.to_string()));
    }

    // e_j expanded as θ-exponent -> coefficient, for the subtraction step
    let thetas: Vec<SymbolId> = (1..=r).map(SymbolId::theta).collect();
    let elem: Vec<MultiPoly> = (0..=r)
        .map(|j| elementary_symmetric(j, &thetas))
        .collect::<Result<_, _>>()?;

    let mut out: Vec<(Monomial, ExactRational)> = Vec::new();
    while let Some((lead, _)) = rest.last_key_value() {
        let lead = lead.clone();
        let coeff = MultiPoly::from_terms(rest.remove(&lead).unwrap());
        if coeff.is_zero() {
            continue;
        }
        // a symmetric polynomial's lex-leading exponent is non-increasing
        if lead.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotSymmetric(p.to_string()));
        }
        let mut cf = Vec::new();
        let mut e_prod = MultiPoly::one();
        for i in 0..r {
            let d = lead[i] - lead.get(i + 1).copied().unwrap_or(0);
            if d > 0 {
                cf.push((SymbolId::chern_f(i + 1), d));
                e_prod = e_prod.mul(&elem[i + 1].pow(d));
            }
        }
        let cf = Monomial::from_pairs(cf);
        for (m, c) in coeff.terms() {
            out.push((m.mul(&cf), c.clone()));
        }
        // subtract coeff * e_prod from the remainder
        for (m, c) in e_prod.terms() {
            let mut exp = vec![0u32; r];
            for (s, e) in m.iter() {
                exp[s.index() - 1] = e;
            }
            if exp == lead {
                continue;
            }
            let entry = rest.entry(exp).or_default();
            for (cm, cc) in coeff.terms() {
                entry.push((cm.clone(), -(cc * c)));
            }
        }
    }
    Ok(MultiPoly::from_terms(out))
}

/// Replaces each c_j(F) by e_j(θ_1..θ_r).
pub fn expand_chern_f(p: &MultiPoly, r: usize) -> Result<MultiPoly, Error> {
    let thetas: Vec<SymbolId> = (1..=r).map(SymbolId::theta).collect();
    let mut subs = Vec::with_capacity(r + 1);
    subs.push(MultiPoly::one());
    for j in 1..=r {
        subs.push(elementary_symmetric(j, &thetas)?);
    }
    if let Some(s) = p
        .symbols()
        .into_iter()
        .find(|s| s.alphabet() == Alphabet::ChernF && s.index() > r)
    {
        return Err(Error::OutOfRange(format!("{s} with r = {r}")));
    }
    Ok(p.substitute(|s| (s.alphabet() == Alphabet::ChernF).then(|| subs[s.index()].clone())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(reduce_theta_symmetric(&p("theta1 + theta2"), 2).unwrap(), p("cF1"));
        assert_eq!(
            reduce_theta_symmetric(&p("theta1^2 + theta2^2"), 2).unwrap(),
            p("cF1^2 - 2*cF2")
        );
        assert_eq!(reduce_theta_symmetric(&p("theta1*theta2*theta3"), 3).unwrap(), p("cF3"));
    }

    #[test]
    fn coefficients_in_other_symbols() {
        let q = p("s1*theta1 + s1*theta2 + 3*theta1*theta2 + s2");
        assert_eq!(reduce_theta_symmetric(&q, 2).unwrap(), p("s1*cF1 + 3*cF2 + s2"));
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(matches!(
            reduce_theta_symmetric(&p("theta1"), 2),
            Err(Error::NotSymmetric(_))
        ));
        assert!(reduce_theta_symmetric(&p("theta3"), 2).is_err());
    }

    #[test]
    fn expand_inverts_reduce() {
        let q = p("cF1^3 - 2*cF1*cF2 + 5*cF3*s1");
        let back = reduce_theta_symmetric(&expand_chern_f(&q, 3).unwrap(), 3).unwrap();
        assert_eq!(back, q);
    }
}
