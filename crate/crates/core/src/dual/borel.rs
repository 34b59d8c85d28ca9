//! The closure of the Borel orbit of `ε` in `N_k ⊂ Hom(C^k, Sym² C^k)` and
//! its equivariant dual.

use std::fmt::Write as _;
use std::time::Instant;

use crate::poly::MultiPoly;
use crate::rational::ExactRational;
use crate::Error;

use super::groebner::{groebner, Budget, MonomialOrder, Poly};
use super::{equivariant_dual, TorusWeight, WeightedIdeal};

/// The coordinate `q^{mr}_l` (`m ≤ r`, `m + r ≤ l`), of weight
/// `z_m + z_r − z_l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NkCoordinate {
    pub m: usize,
    pub r: usize,
    pub l: usize,
}

impl NkCoordinate {
    pub fn weight(&self, k: usize) -> TorusWeight {
        let mut c = vec![0i64; k];
        c[self.m - 1] += 1;
        c[self.r - 1] += 1;
        c[self.l - 1] -= 1;
        TorusWeight::new(c)
    }

    pub fn name(&self) -> String {
        format!("q{}{}_{}", self.m, self.r, self.l)
    }
}

/// Coordinates of `N_k` ordered by `(l, m, r)`.
pub fn nk_coordinates(k: usize) -> Vec<NkCoordinate> {
    let mut out = Vec::new();
    for l in 1..=k {
        for m in 1..=l {
            for r in m..=l {
                if m + r <= l {
                    out.push(NkCoordinate { m, r, l });
                }
            }
        }
    }
    out
}

/// The orbit-closure ideal together with the data used to build it.
#[derive(Clone, Debug)]
pub struct BorelOrbit {
    pub k: usize,
    pub coords: Vec<NkCoordinate>,
    /// Generators of the parametrized graph ideal, over the parameters
    /// followed by the coordinates.
    pub graph: Vec<Poly>,
    pub param_names: Vec<String>,
    /// Elimination ideal in the coordinates; its generators form a Gröbner
    /// basis for [`BorelOrbit::order`].
    pub ideal: WeightedIdeal,
    pub elapsed_ms: u128,
}

impl BorelOrbit {
    /// Graded reverse lexicographic order on the coordinates in `(l, m, r)`
    /// order.
    pub fn order() -> MonomialOrder {
        MonomialOrder::GrevLex
    }

    /// Plain-text listing of the parametrization and the orbit ideal, one
    /// generator per line.
    pub fn audit_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# Borel orbit closure in N_{}", self.k);
        let _ = writeln!(s, "# coordinates (weight z_m + z_r - z_l), ordered by (l, m, r):");
        for c in &self.coords {
            let _ = writeln!(s, "#   {} : {}", c.name(), c.weight(self.k));
        }
        let mut all_names = self.param_names.clone();
        all_names.extend(self.coords.iter().map(|c| c.name()));
        let _ = writeln!(
            s,
            "# graph ideal (parameters eliminated with a block order: grevlex on {} parameters, then grevlex on coordinates):",
            self.param_names.len()
        );
        for g in &self.graph {
            let _ = writeln!(s, "{}", g.display(&all_names));
        }
        let _ = writeln!(s, "# orbit ideal, reduced Groebner basis for grevlex on coordinates:");
        for g in &self.ideal.generators {
            let _ = writeln!(s, "{}", g.display(&self.ideal.names));
        }
        s
    }
}

type Matrix = Vec<Vec<Poly>>;

/// The ideal of `closure(B_k · ε)`, with `g = D·U` acting by
/// `Φ ↦ Sym²(g) ∘ Φ ∘ g^{-1}`.
pub fn borel_orbit_ideal(k: usize, budget: Budget) -> Result<BorelOrbit, Error> {
    if !(2..=5).contains(&k) {
        return Err(Error::OutOfRange(format!("orbit ideal for k = {k} (supported: 2..=5)")));
    }
    let start = Instant::now();
    let coords = nk_coordinates(k);
    let nu = k * (k - 1) / 2;
    let nparams = nu + 2 * k;
    let nvars = nparams + coords.len();
    let order = MonomialOrder::Elimination { block: nparams };

    // parameter layout: u_ab (a < b), t_1..t_k, w_1..w_k with t_a w_a = 1
    let mut param_names = Vec::with_capacity(nparams);
    let mut uidx = vec![vec![usize::MAX; k]; k];
    for a in 0..k {
        for b in a + 1..k {
            uidx[a][b] = param_names.len();
            param_names.push(format!("u{}{}", a + 1, b + 1));
        }
    }
    let t = |a: usize| nu + a;
    let w = |a: usize| nu + k + a;
    for a in 1..=k {
        param_names.push(format!("t{a}"));
    }
    for a in 1..=k {
        param_names.push(format!("w{a}"));
    }

    let one = Poly::constant(ExactRational::ONE, nvars);
    let zero = Poly::zero();
    let u: Matrix = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| match a.cmp(&b) {
                    std::cmp::Ordering::Equal => one.clone(),
                    std::cmp::Ordering::Less => Poly::var(uidx[a][b], nvars),
                    std::cmp::Ordering::Greater => zero.clone(),
                })
                .collect()
        })
        .collect();
    // U^{-1}, upper unitriangular: V[a][b] = −Σ_{a<c≤b} U[a][c] V[c][b]
    let mut v: Matrix = vec![vec![zero.clone(); k]; k];
    for b in 0..k {
        v[b][b] = one.clone();
        for a in (0..b).rev() {
            let mut acc = Poly::zero();
            for c in a + 1..=b {
                acc = acc.sub(&u[a][c].mul(&v[c][b], order), order);
            }
            v[a][b] = acc;
        }
    }

    // pair basis e_m e_r of Sym², m ≤ r
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|m| (m..k).map(move |r| (m, r))).collect();
    let pidx = |m: usize, r: usize| pairs.iter().position(|&p| p == (m.min(r), m.max(r))).unwrap();

    // ε(e_l) = Σ over ordered (m, r) with m + r = l of e_m e_r (1-based)
    let mut eps: Matrix = vec![vec![zero.clone(); k]; pairs.len()];
    for l in 1..=k {
        for m in 1..l {
            let r = l - m;
            let p = pidx(m - 1, r - 1);
            eps[p][l - 1] = eps[p][l - 1].add(&one, order);
        }
    }
    // Φ' = ε ∘ U^{-1}
    let mut phi: Matrix = vec![vec![zero.clone(); k]; pairs.len()];
    for (p, row) in phi.iter_mut().enumerate() {
        for (l, entry) in row.iter_mut().enumerate() {
            let mut acc = Poly::zero();
            for c in 0..k {
                if !eps[p][c].is_zero() && !v[c][l].is_zero() {
                    acc = acc.add(&eps[p][c].mul(&v[c][l], order), order);
                }
            }
            *entry = acc;
        }
    }
    // Sym²(U) on the pair basis
    let mut sym: Matrix = vec![vec![zero.clone(); pairs.len()]; pairs.len()];
    for (j, &(m, r)) in pairs.iter().enumerate() {
        for (i, &(a, b)) in pairs.iter().enumerate() {
            let mut s = u[a][m].mul(&u[b][r], order);
            if a != b {
                s = s.add(&u[b][m].mul(&u[a][r], order), order);
            }
            sym[i][j] = s;
        }
    }

    let mut graph = Vec::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for l in 0..k {
            let mut entry = Poly::zero();
            for j in 0..pairs.len() {
                if !sym[i][j].is_zero() && !phi[j][l].is_zero() {
                    entry = entry.add(&sym[i][j].mul(&phi[j][l], order), order);
                }
            }
            let coord = coords
                .iter()
                .position(|c| (c.m, c.r, c.l) == (a + 1, b + 1, l + 1));
            match coord {
                None if entry.is_zero() => {}
                None => {
                    return Err(Error::Internal(format!(
                        "orbit leaves N_{k}: entry ({}{}, {}) is nonzero",
                        a + 1,
                        b + 1,
                        l + 1
                    )))
                }
                Some(c) => {
                    let torus = Poly::var(t(a), nvars)
                        .mul(&Poly::var(t(b), nvars), order)
                        .mul(&Poly::var(w(l), nvars), order);
                    let image = torus.mul(&entry, order);
                    graph.push(Poly::var(nparams + c, nvars).sub(&image, order));
                }
            }
        }
    }
    for a in 0..k {
        graph.push(Poly::var(t(a), nvars).mul(&Poly::var(w(a), nvars), order).sub(&one, order));
    }

    let gb = groebner(&graph, order, budget)?;
    let qorder = BorelOrbit::order();
    let elim: Vec<Poly> = gb
        .iter()
        .filter(|g| g.terms().iter().all(|(e, _)| e[..nparams].iter().all(|&x| x == 0)))
        .map(|g| g.project(nparams..nvars, qorder))
        .collect();
    let weights = coords.iter().map(|c| c.weight(k)).collect();
    let names = coords.iter().map(|c| c.name()).collect();
    let ideal = WeightedIdeal::new(elim, weights, names)?;
    Ok(BorelOrbit {
        k,
        coords,
        graph,
        param_names,
        ideal,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Multidegree of the orbit closure: Gröbner degeneration to the initial
/// monomial ideal, then the monomial multidegree.
pub fn epd_pipeline(k: usize, budget: Budget) -> Result<(MultiPoly, BorelOrbit), Error> {
    let orbit = borel_orbit_ideal(k, budget)?;
    let mdeg = equivariant_dual(&orbit.ideal, BorelOrbit::order(), budget)?;
    if let crate::GradedDegree::Nonhomogeneous = mdeg.graded_degree() {
        return Err(Error::Internal(format!("multidegree {mdeg} is not homogeneous")));
    }
    Ok((mdeg, orbit))
}
