//! Degree criteria that force an iterated residue to vanish.
//!
//! Coefficient symbols (λ, θ, s, c(F)) are treated as generic, so a
//! polynomial's `S`-degree is read off its monomials directly.

use crate::poly::MultiPoly;
use crate::symbol::Alphabet;

use super::LinearForm;

/// Degree of `p` after `z_s ↦ t` for `s ∈ S` and `z_s ↦ 1` otherwise.
/// `None` for the zero polynomial.
pub fn poly_degree_in(p: &MultiPoly, set: &[usize]) -> Option<u32> {
    p.terms()
        .iter()
        .map(|(m, _)| {
            m.iter()
                .filter(|(s, _)| s.alphabet() == Alphabet::Z && set.contains(&s.index()))
                .map(|(_, e)| e)
                .sum()
        })
        .max()
}

/// Number of factors with a non-zero coefficient on some `z_s`, `s ∈ S`.
pub fn forms_degree_in(q: &[LinearForm], set: &[usize]) -> u32 {
    q.iter().filter(|l| set.iter().any(|&s| l.contains(s))).count() as u32
}

/// Number of factors whose leading variable is `z_m`.
pub fn lead(q: &[LinearForm], m: usize) -> u32 {
    q.iter().filter(|l| l.leading_var() == m).count() as u32
}

/// `deg(p; k..l) + k − l + 1 < deg(q; k..l)`.
pub fn vanish_option1(p: &MultiPoly, q: &[LinearForm], k: usize, l: usize) -> bool {
    if l == 0 || l > k {
        return false;
    }
    let set: Vec<usize> = (l..=k).collect();
    option1_from_degree(poly_degree_in(p, &set), q, k, l)
}

/// [`vanish_option1`] with `deg(p; k..l)` supplied by the caller (`None`
/// when `p = 0`).
pub fn option1_from_degree(deg_p: Option<u32>, q: &[LinearForm], k: usize, l: usize) -> bool {
    if l == 0 || l > k {
        return false;
    }
    let set: Vec<usize> = (l..=k).collect();
    match deg_p {
        None => true,
        Some(dp) => (dp as u64 + (k - l) as u64 + 1) < forms_degree_in(q, &set) as u64,
    }
}

/// `deg(p; l) + 1 < deg(q; l) = lead(q; l)`.
pub fn vanish_option2(p: &MultiPoly, q: &[LinearForm], l: usize) -> bool {
    if l == 0 {
        return false;
    }
    option2_from_degree(poly_degree_in(p, &[l]), q, l)
}

/// [`vanish_option2`] with `deg(p; l)` supplied by the caller.
pub fn option2_from_degree(deg_p: Option<u32>, q: &[LinearForm], l: usize) -> bool {
    if l == 0 {
        return false;
    }
    let dq = forms_degree_in(q, &[l]);
    if dq != lead(q, l) {
        return false;
    }
    match deg_p {
        None => true,
        Some(dp) => dp + 1 < dq,
    }
}
