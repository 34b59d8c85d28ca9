//! Two points: the punctual locus is a projective bundle over `X`, so the
//! integral is a push-forward computed without residues.
//!
//! Model: `π: P(T*X) → X` with `L ⊂ π*T*X` the tautological line and
//! `ℓ = c_1(L)`. The restriction of `F^{[2]}` is `F ⊕ F⊗L`, and
//! `π_* ℓ^m = (−1)^{n−1} s_{m−n+1}(X)`.

use crate::classes::ChernMonomial;
use crate::poly::{Monomial, MultiPoly};
use crate::rational::ExactRational;
use crate::symbol::SymbolId;
use crate::Error;

use super::UniversalPolynomial;

/// `ℓ` is carried as the formal symbol `z1`.
fn ell() -> SymbolId {
    SymbolId::z(1)
}

/// Chern classes of `F ⊕ F⊗L`, `c_0..c_{2r}`.
fn chern_classes(r: usize) -> Vec<MultiPoly> {
    let cf = |j: usize| {
        if j == 0 {
            MultiPoly::one()
        } else {
            MultiPoly::var(SymbolId::chern_f(j))
        }
    };
    // c_i(F⊗L) = Σ_{j ≤ i} c_j(F) C(r−j, i−j) ℓ^{i−j}
    let twisted: Vec<MultiPoly> = (0..=r)
        .map(|i| {
            let terms = (0..=i).map(|j| {
                let coeff = ExactRational::binomial((r - j) as u64, (i - j) as u64);
                cf(j).mul_monomial(&Monomial::var(ell(), (i - j) as u32), &coeff)
            });
            MultiPoly::sum(&terms.collect::<Vec<_>>())
        })
        .collect();
    (0..=2 * r)
        .map(|i| {
            let parts: Vec<MultiPoly> = (i.saturating_sub(r)..=i.min(r))
                .map(|a| cf(a).mul(&twisted[i - a]))
                .collect();
            MultiPoly::sum(&parts)
        })
        .collect()
}

/// `∫` of `M(c(F^{[2]}))` over the two-point punctual locus, as a class on
/// `X`.
pub fn k1_oracle(n: usize, r: usize, m: &ChernMonomial) -> Result<UniversalPolynomial, Error> {
    if n < 2 || r < 1 {
        return Err(Error::InvalidSpec(format!("n = {n}, r = {r}")));
    }
    let expected = (2 * n - 1) as u32;
    if m.weighted_degree() != expected {
        return Err(Error::WeightedDegree { actual: m.weighted_degree(), expected });
    }
    if m.max_index() > 2 * r {
        return Err(Error::OutOfRange(format!("c{} with rank {}", m.max_index(), 2 * r)));
    }
    let c = chern_classes(r);
    let mut class = MultiPoly::one();
    for (&i, &e) in m.exponents() {
        class = class.mul(&c[i].pow(e));
    }
    let sign = if n % 2 == 0 { -ExactRational::ONE } else { ExactRational::ONE };
    let mut parts = Vec::new();
    for (power, coeff) in class.split_by(ell()) {
        let power = power as usize;
        if power + 1 < n || power + 1 - n > n {
            continue;
        }
        let j = power + 1 - n;
        let segre = if j == 0 { MultiPoly::one() } else { MultiPoly::var(SymbolId::segre(j)) };
        parts.push(coeff.mul(&segre).scale(&sign));
    }
    UniversalPolynomial::new(MultiPoly::sum(&parts), n, 1, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chern_classes_rank_one() {
        let c = chern_classes(1);
        assert_eq!(c[1], "2*cF1 + z1".parse().unwrap());
        assert_eq!(c[2], "cF1^2 + cF1*z1".parse().unwrap());
    }

    #[test]
    fn degree_check() {
        let m = ChernMonomial::new([(1, 2)]).unwrap();
        assert!(matches!(k1_oracle(2, 1, &m), Err(Error::WeightedDegree { actual: 2, expected: 3 })));
    }

    #[test]
    fn fibre_class() {
        let m = ChernMonomial::new([(1, 3)]).unwrap();
        let u = k1_oracle(2, 1, &m).unwrap();
        // (2c + ℓ)^3 pushed forward: ℓ^1 ↦ −1, ℓ^2 ↦ −s1, ℓ^3 ↦ −s2
        assert_eq!(u.poly(), &"-12*cF1^2 - 6*cF1*s1 - s2".parse().unwrap());
    }
}
