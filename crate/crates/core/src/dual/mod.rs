//! Equivariant Poincaré duals (multidegrees) of torus-invariant subvarieties
//! of a linear representation, and the table of `Q_k`.

pub mod borel;
pub mod groebner;
pub mod monomial;

use std::fmt;

use crate::poly::MultiPoly;
use crate::rational::ExactRational;
use crate::symbol::SymbolId;
use crate::Error;

pub use borel::{borel_orbit_ideal, epd_pipeline, nk_coordinates, BorelOrbit, NkCoordinate};
pub use groebner::{Budget, Exp, MonomialOrder, Poly};
pub use monomial::multidegree_monomial;

/// An integer linear form in `z_1..z_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusWeight {
    pub coeffs: Vec<i64>,
}

impl TorusWeight {
    pub fn new(coeffs: Vec<i64>) -> Self {
        TorusWeight { coeffs }
    }

    pub fn to_poly(&self) -> MultiPoly {
        MultiPoly::sum(
            &self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| MultiPoly::var(SymbolId::z(i + 1)).scale(&ExactRational::from_integer(c)))
                .collect::<Vec<_>>(),
        )
    }

    /// Total weight of a monomial in the coordinates carrying `weights`.
    pub fn of_exponent(weights: &[TorusWeight], e: &[u16]) -> TorusWeight {
        let len = weights.iter().map(|w| w.coeffs.len()).max().unwrap_or(0);
        let mut c = vec![0i64; len];
        for (w, &x) in weights.iter().zip(e) {
            for (i, &a) in w.coeffs.iter().enumerate() {
                c[i] += a * x as i64;
            }
        }
        TorusWeight::new(c)
    }
}

impl fmt::Display for TorusWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// An ideal in the coordinate ring of a torus representation with
/// coordinates `y_1..y_N` of the given weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedIdeal {
    pub generators: Vec<Poly>,
    pub weights: Vec<TorusWeight>,
    /// Coordinate names for display.
    pub names: Vec<String>,
}

impl WeightedIdeal {
    /// Checks that every generator is weight-homogeneous.
    pub fn new(generators: Vec<Poly>, weights: Vec<TorusWeight>, names: Vec<String>) -> Result<Self, Error> {
        if names.len() != weights.len() {
            return Err(Error::InvalidSpec("one name per coordinate required".into()));
        }
        for g in &generators {
            let mut ws = g.terms().iter().map(|(e, _)| TorusWeight::of_exponent(&weights, e));
            if let Some(first) = ws.next() {
                if ws.any(|w| w != first) {
                    return Err(Error::InvalidSpec(format!(
                        "generator {} is not weight-homogeneous",
                        g.display(&names)
                    )));
                }
            }
        }
        Ok(WeightedIdeal { generators, weights, names })
    }

    /// Default names `y1..yN`.
    pub fn default_names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("y{i}")).collect()
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }
}

/// A monomial ideal given by minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    generators: Vec<Exp>,
}

impl MonomialIdeal {
    /// Minimalizes the generator list (drops multiples, sorts).
    pub fn new(nvars: usize, gens: Vec<Exp>) -> Self {
        let mut gens = gens;
        gens.sort_by(|a, b| {
            let da: u32 = a.iter().map(|&x| x as u32).sum();
            let db: u32 = b.iter().map(|&x| x as u32).sum();
            da.cmp(&db).then_with(|| a.cmp(b))
        });
        gens.dedup();
        let mut min: Vec<Exp> = Vec::new();
        for g in gens {
            if !min.iter().any(|m| m.iter().zip(&g).all(|(a, b)| a <= b)) {
                min.push(g);
            }
        }
        min.sort();
        MonomialIdeal { nvars, generators: min }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Exp] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }
}

/// `Q_k` as printed for `k ≤ 5`.
pub fn qk_lookup(k: usize) -> Result<MultiPoly, Error> {
    let text = match k {
        1..=3 => "1",
        4 => "2*z1 + z2 - z4",
        5 => {
            let a: MultiPoly = "2*z1 + z2 - z5".parse()?;
            let b: MultiPoly = "2*z1^2 + 3*z1*z2 - 2*z1*z5 + 2*z2*z3 - z2*z4 - z2*z5 - z3*z4 + z4*z5".parse()?;
            return Ok(a.mul(&b));
        }
        0 => return Err(Error::OutOfRange("k must be at least 1".into())),
        _ => return Err(Error::QkUnavailable(k)),
    };
    text.parse()
}

/// `Π_{i ∈ subset} η_i`, the dual of the coordinate subspace
/// `{y_i = 0, i ∈ subset}` (indices are 1-based).
pub fn coordinate_subspace_dual(subset: &[usize], weights: &[TorusWeight]) -> Result<MultiPoly, Error> {
    let mut out = MultiPoly::one();
    for &i in subset {
        let w = weights
            .get(i.wrapping_sub(1))
            .ok_or_else(|| Error::OutOfRange(format!("coordinate {i} of {}", weights.len())))?;
        out = out.mul(&w.to_poly());
    }
    Ok(out)
}

/// Reduced Gröbner basis of `ideal` for `order`.
pub fn groebner_basis(ideal: &WeightedIdeal, order: MonomialOrder, budget: Budget) -> Result<WeightedIdeal, Error> {
    let gb = groebner::groebner(&ideal.generators, order, budget)?;
    Ok(WeightedIdeal { generators: gb, weights: ideal.weights.clone(), names: ideal.names.clone() })
}

/// Leading monomials of the reduced Gröbner basis.
pub fn initial_ideal(ideal: &WeightedIdeal, order: MonomialOrder, budget: Budget) -> Result<MonomialIdeal, Error> {
    let gb = groebner::groebner(&ideal.generators, order, budget)?;
    Ok(MonomialIdeal::new(
        ideal.nvars(),
        gb.iter().filter_map(|g| g.leading_exp().cloned()).collect(),
    ))
}

/// Equivariant dual of the subvariety cut out by `ideal`, by degeneration
/// to the initial ideal for `order`.
pub fn equivariant_dual(ideal: &WeightedIdeal, order: MonomialOrder, budget: Budget) -> Result<MultiPoly, Error> {
    let init = initial_ideal(ideal, order, budget)?;
    multidegree_monomial(&init, &ideal.weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn table() {
        assert_eq!(qk_lookup(3).unwrap(), MultiPoly::one());
        assert_eq!(qk_lookup(4).unwrap(), p("2*z1 + z2 - z4"));
        assert_eq!(qk_lookup(5).unwrap().graded_degree(), crate::GradedDegree::Homogeneous(3));
        assert_eq!(qk_lookup(6), Err(Error::QkUnavailable(6)));
        assert_eq!(Error::QkUnavailable(6).to_string(), "Q_6 unavailable");
    }

    #[test]
    fn coordinate_duals() {
        let w = vec![
            TorusWeight::new(vec![1, 0, 0]),
            TorusWeight::new(vec![0, 1, 0]),
            TorusWeight::new(vec![0, 0, 1]),
            TorusWeight::new(vec![1, -1, 1]),
        ];
        assert_eq!(coordinate_subspace_dual(&[1], &w).unwrap(), p("z1"));
        assert_eq!(coordinate_subspace_dual(&[], &w).unwrap(), MultiPoly::one());
        assert_eq!(coordinate_subspace_dual(&[1, 3], &w).unwrap(), p("z1*z3"));
        assert!(coordinate_subspace_dual(&[5], &w).is_err());
    }

    #[test]
    fn monomial_ideal_is_minimalized() {
        let e = |v: &[u16]| -> Exp { v.iter().copied().collect() };
        let i = MonomialIdeal::new(2, vec![e(&[2, 1]), e(&[1, 0]), e(&[1, 0])]);
        assert_eq!(i.generators(), &[e(&[1, 0])]);
    }
}
