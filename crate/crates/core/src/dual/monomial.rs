//! Multidegrees of monomial ideals.

use crate::poly::MultiPoly;
use crate::rational::ExactRational;
use crate::Error;

use super::{coordinate_subspace_dual, MonomialIdeal, TorusWeight};

fn is_cover(set: &[usize], supports: &[Vec<usize>]) -> bool {
    supports.iter().all(|s| s.iter().any(|v| set.contains(v)))
}

fn subsets(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == size {
        f(cur);
        return;
    }
    for v in start..n {
        if n - v < size - cur.len() {
            break;
        }
        cur.push(v);
        subsets(n, size, v + 1, cur, f);
        cur.pop();
    }
}

/// Length of `k[y_S] / I|_{y_j = 1, j ∉ S}`, which must be finite.
fn local_multiplicity(ideal: &MonomialIdeal, cover: &[usize]) -> Result<u64, Error> {
    let gens: Vec<Vec<u16>> = ideal
        .generators()
        .iter()
        .map(|g| cover.iter().map(|&v| g[v]).collect())
        .collect();
    let mut bounds = Vec::with_capacity(cover.len());
    for i in 0..cover.len() {
        let b = gens
            .iter()
            .filter(|g| g.iter().enumerate().all(|(j, &x)| j == i || x == 0))
            .map(|g| g[i])
            .min()
            .ok_or_else(|| Error::Internal(format!("component {cover:?} is not top-dimensional")))?;
        bounds.push(b as u64);
    }
    let volume: u64 = bounds.iter().product();
    if volume > 50_000_000 {
        return Err(Error::Internal(format!("multiplicity box of size {volume} too large")));
    }
    let mut count = 0u64;
    let mut e = vec![0u16; cover.len()];
    'outer: loop {
        if !gens.iter().any(|g| g.iter().zip(&e).all(|(a, b)| a <= b)) {
            count += 1;
        }
        for i in 0..e.len() {
            e[i] += 1;
            if (e[i] as u64) < bounds[i] {
                continue 'outer;
            }
            e[i] = 0;
        }
        break;
    }
    Ok(count)
}

/// Sum over the top-dimensional coordinate-subspace components of
/// `multiplicity · Π η_i`.
pub fn multidegree_monomial(ideal: &MonomialIdeal, weights: &[TorusWeight]) -> Result<MultiPoly, Error> {
    if weights.len() != ideal.nvars() {
        return Err(Error::InvalidSpec(format!(
            "{} weights for {} coordinates",
            weights.len(),
            ideal.nvars()
        )));
    }
    if ideal.is_zero() {
        return Ok(MultiPoly::one());
    }
    let supports: Vec<Vec<usize>> = ideal
        .generators()
        .iter()
        .map(|g| g.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i).collect())
        .collect();
    if supports.iter().any(|s| s.is_empty()) {
        return Err(Error::InvalidSpec("the unit ideal has no multidegree".into()));
    }
    let n = ideal.nvars();
    for size in 1..=n {
        let mut covers: Vec<Vec<usize>> = Vec::new();
        subsets(n, size, 0, &mut Vec::new(), &mut |s| {
            if is_cover(s, &supports) {
                covers.push(s.to_vec());
            }
        });
        if covers.is_empty() {
            continue;
        }
        let mut parts = Vec::with_capacity(covers.len());
        for cover in &covers {
            let mult = local_multiplicity(ideal, cover)?;
            let one_based: Vec<usize> = cover.iter().map(|v| v + 1).collect();
            parts.push(coordinate_subspace_dual(&one_based, weights)?.scale(&ExactRational::from_integer(mult as i64)));
        }
        return Ok(MultiPoly::sum(&parts));
    }
    unreachable!("the full coordinate set covers every proper monomial ideal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::Exp;

    fn e(v: &[u16]) -> Exp {
        v.iter().copied().collect()
    }

    fn toric_weights() -> Vec<TorusWeight> {
        vec![
            TorusWeight::new(vec![1, 0, 0]),
            TorusWeight::new(vec![0, 1, 0]),
            TorusWeight::new(vec![0, 0, 1]),
            TorusWeight::new(vec![1, -1, 1]),
        ]
    }

    #[test]
    fn examples() {
        let w = toric_weights();
        let i = MonomialIdeal::new(4, vec![e(&[1, 0, 1, 0])]);
        assert_eq!(multidegree_monomial(&i, &w).unwrap(), "z1 + z3".parse().unwrap());
        let zero = MonomialIdeal::new(4, vec![]);
        assert_eq!(multidegree_monomial(&zero, &w).unwrap(), MultiPoly::one());
        let i = MonomialIdeal::new(4, vec![e(&[2, 0, 0, 0]), e(&[1, 1, 0, 0])]);
        assert_eq!(multidegree_monomial(&i, &w).unwrap(), "z1".parse().unwrap());
    }

    #[test]
    fn multiplicities() {
        let w = toric_weights();
        // (y1^2, y2^3) has one component of multiplicity 6
        let i = MonomialIdeal::new(4, vec![e(&[2, 0, 0, 0]), e(&[0, 3, 0, 0])]);
        assert_eq!(multidegree_monomial(&i, &w).unwrap(), "6*z1*z2".parse().unwrap());
        // (y1^2 y3) = 2·{y1=0} + {y3=0}
        let i = MonomialIdeal::new(4, vec![e(&[2, 0, 1, 0])]);
        assert_eq!(multidegree_monomial(&i, &w).unwrap(), "2*z1 + z3".parse().unwrap());
    }
}
