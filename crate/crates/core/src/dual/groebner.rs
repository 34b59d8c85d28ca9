//! Buchberger's algorithm over exact rationals, on polynomials in indexed
//! variables `y_0 .. y_{N-1}`.

use std::cmp::Ordering;
use std::fmt;
use std::time::{Duration, Instant};

use smallvec::SmallVec;

use crate::rational::ExactRational;
use crate::Error;

/// Exponent vector, one entry per ring variable.
pub type Exp = SmallVec<[u16; 36]>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Graded reverse lexicographic on the first `block` variables, ties
    /// broken by graded reverse lexicographic on the rest. Eliminates the
    /// first block.
    Elimination { block: usize },
}

fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&x| x as u32).sum();
    let db: u32 = b.iter().map(|&x| x as u32).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u16], b: &[u16]) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Elimination { block } => {
                grevlex(&a[..block], &b[..block]).then_with(|| grevlex(&a[block..], &b[block..]))
            }
        }
    }
}

/// A polynomial with terms sorted in decreasing order for a fixed
/// [`MonomialOrder`]. Arithmetic that depends on the order takes it
/// explicitly.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    terms: Vec<(Exp, ExactRational)>,
}

fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u16], b: &[u16]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn mask(e: &[u16]) -> u64 {
    e.iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .fold(0u64, |m, (i, _)| m | (1u64 << (i % 64)))
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    /// Collects terms, combining duplicates and sorting for `order`.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (Exp, ExactRational)>,
        order: MonomialOrder,
    ) -> Self {
        let mut v: Vec<(Exp, ExactRational)> = terms.into_iter().collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Exp, ExactRational)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += &c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn constant(c: ExactRational, nvars: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: vec![(std::iter::repeat(0).take(nvars).collect(), c)] }
    }

    /// The variable `y_i` (0-based) in a ring with `nvars` variables.
    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e: Exp = std::iter::repeat(0).take(nvars).collect();
        e[i] = 1;
        Poly { terms: vec![(e, ExactRational::ONE)] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly, order: MonomialOrder) -> Poly {
        Poly::from_terms(self.terms.iter().chain(&other.terms).cloned(), order)
    }

    pub fn sub(&self, other: &Poly, order: MonomialOrder) -> Poly {
        let neg = other.terms.iter().map(|(e, c)| (e.clone(), -c));
        Poly::from_terms(self.terms.iter().cloned().chain(neg), order)
    }

    pub fn mul(&self, other: &Poly, order: MonomialOrder) -> Poly {
        let prods = self.terms.iter().flat_map(|(ea, ca)| {
            other.terms.iter().map(move |(eb, cb)| {
                let e: Exp = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                (e, ca * cb)
            })
        });
        Poly::from_terms(prods, order)
    }

    pub fn scale(&self, c: &ExactRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    /// Keeps the variables `range` of every exponent (the caller ensures the
    /// others are zero).
    pub fn project(&self, range: std::ops::Range<usize>, order: MonomialOrder) -> Poly {
        Poly::from_terms(
            self.terms.iter().map(|(e, c)| (e[range.clone()].iter().copied().collect(), c.clone())),
            order,
        )
    }

    pub fn terms(&self) -> &[(Exp, ExactRational)] {
        &self.terms
    }

    pub fn leading_exp(&self) -> Option<&Exp> {
        self.terms.first().map(|(e, _)| e)
    }

    /// Re-sorts for a different order.
    pub fn reorder(&self, order: MonomialOrder) -> Poly {
        Poly::from_terms(self.terms.iter().cloned(), order)
    }

    fn monic(mut self) -> Poly {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.recip();
                for (_, x) in &mut self.terms {
                    *x *= &inv;
                }
            }
        }
        self
    }

    /// `self − c·x^shift·g`, all sorted for `order`.
    fn sub_scaled(&self, c: &ExactRational, shift: &[u16], g: &Poly, order: MonomialOrder) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let shifted = g.terms.iter().map(|(e, x)| {
            let e: Exp = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            (e, -(x * c))
        });
        let mut a = self.terms.iter().cloned().peekable();
        let mut b = shifted.peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().unwrap()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (e, c1) = a.next().unwrap();
                        let (_, c2) = b.next().unwrap();
                        let s = &c1 + &c2;
                        if !s.is_zero() {
                            out.push((e, s));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        Poly { terms: out }
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// Writes the polynomial with the given variable names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        PolyDisplay { p: self, names }
    }
}

struct PolyDisplay<'a> {
    p: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.p.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(j, &x)| {
                    if x == 1 {
                        self.names[j].clone()
                    } else {
                        format!("{}^{}", self.names[j], x)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{a}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Limits for a Gröbner computation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub time: Option<Duration>,
}

struct Basis {
    polys: Vec<Poly>,
    masks: Vec<u64>,
    active: Vec<bool>,
}

impl Basis {
    fn reducer(&self, e: &[u16]) -> Option<usize> {
        let me = mask(e);
        (0..self.polys.len()).find(|&i| {
            self.active[i]
                && self.masks[i] & !me == 0
                && divides(self.polys[i].leading_exp().unwrap(), e)
        })
    }

    /// Full reduction (leading and tail terms) by the active elements.
    fn reduce(&self, f: Poly, order: MonomialOrder) -> Poly {
        let mut rem = f;
        let mut done: Vec<(Exp, ExactRational)> = Vec::new();
        while let Some((e, c)) = rem.terms.first().cloned() {
            match self.reducer(&e) {
                Some(i) => {
                    let g = &self.polys[i];
                    let (ge, gc) = &g.terms[0];
                    let shift: Exp = e.iter().zip(ge).map(|(a, b)| a - b).collect();
                    let coef = &c / gc;
                    rem = rem.sub_scaled(&coef, &shift, g, order);
                }
                None => {
                    done.push((e, c));
                    rem.terms.remove(0);
                }
            }
        }
        Poly { terms: done }
    }
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Exp,
    sugar: u32,
}

fn tdeg(e: &[u16]) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

fn spoly(f: &Poly, g: &Poly, l: &[u16], order: MonomialOrder) -> Poly {
    let (fe, fc) = &f.terms[0];
    let (ge, gc) = &g.terms[0];
    let sf: Exp = l.iter().zip(fe).map(|(a, b)| a - b).collect();
    let sg: Exp = l.iter().zip(ge).map(|(a, b)| a - b).collect();
    Poly::zero()
        .sub_scaled(&-fc.recip(), &sf, f, order)
        .sub_scaled(&gc.recip(), &sg, g, order)
}

/// Adds `h` to the basis, updating the pair set (Gebauer–Möller criteria).
fn insert(h: Poly, sugar: u32, basis: &mut Basis, sugars: &mut Vec<u32>, pairs: &mut Vec<Pair>) {
    let h = h.monic();
    let hidx = basis.polys.len();
    let he = h.leading_exp().unwrap().clone();
    let cands: Vec<(usize, Exp, bool)> = (0..hidx)
        .filter(|&g| basis.active[g])
        .map(|g| {
            let ge = basis.polys[g].leading_exp().unwrap();
            let coprime = he.iter().zip(ge.iter()).all(|(a, b)| *a == 0 || *b == 0);
            (g, lcm(&he, ge), coprime)
        })
        .collect();
    let mut keep: Vec<(usize, Exp, bool)> = Vec::new();
    for (idx, (g, l, coprime)) in cands.iter().enumerate() {
        let dominated = !coprime
            && (cands[idx + 1..].iter().any(|(_, l2, _)| divides(l2, l))
                || keep.iter().any(|(_, l2, _)| divides(l2, l)));
        if !dominated {
            keep.push((*g, l.clone(), *coprime));
        }
    }
    pairs.retain(|p| {
        let ie = basis.polys[p.i].leading_exp().unwrap();
        let je = basis.polys[p.j].leading_exp().unwrap();
        !(divides(&he, &p.lcm) && lcm(ie, &he) != p.lcm && lcm(je, &he) != p.lcm)
    });
    for (g, l, coprime) in keep {
        if coprime {
            continue;
        }
        let ge = basis.polys[g].leading_exp().unwrap();
        let s = (tdeg(&l) - tdeg(ge) + sugars[g]).max(tdeg(&l) - tdeg(&he) + sugar);
        pairs.push(Pair { i: g, j: hidx, lcm: l, sugar: s });
    }
    for g in 0..hidx {
        if basis.active[g] && divides(&he, basis.polys[g].leading_exp().unwrap()) {
            basis.active[g] = false;
        }
    }
    basis.masks.push(mask(&he));
    basis.polys.push(h);
    basis.active.push(true);
    sugars.push(sugar);
}

/// Reduced Gröbner basis of the ideal generated by `gens` (monic, sorted by
/// leading monomial, ascending).
pub fn groebner(gens: &[Poly], order: MonomialOrder, budget: Budget) -> Result<Vec<Poly>, Error> {
    let start = Instant::now();
    let mut basis = Basis { polys: Vec::new(), masks: Vec::new(), active: Vec::new() };
    let mut sugars: Vec<u32> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut input: Vec<Poly> = gens.iter().map(|g| g.reorder(order)).filter(|g| !g.is_zero()).collect();
    input.sort_by(|a, b| order.cmp(a.leading_exp().unwrap(), b.leading_exp().unwrap()));

    for g in input {
        let r = basis.reduce(g, order);
        if !r.is_zero() {
            let s = r.degree();
            insert(r, s, &mut basis, &mut sugars, &mut pairs);
        }
    }

    while !pairs.is_empty() {
        if let Some(limit) = budget.time {
            if start.elapsed() > limit {
                return Err(Error::Timeout(format!(
                    "Gröbner basis not finished after {:?}",
                    start.elapsed()
                )));
            }
        }
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a]
                    .sugar
                    .cmp(&pairs[b].sugar)
                    .then_with(|| order.cmp(&pairs[a].lcm, &pairs[b].lcm))
                    .then_with(|| (pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
            })
            .unwrap();
        let p = pairs.swap_remove(best);
        let s = spoly(&basis.polys[p.i], &basis.polys[p.j], &p.lcm, order);
        let r = basis.reduce(s, order);
        if !r.is_zero() {
            insert(r, p.sugar, &mut basis, &mut sugars, &mut pairs);
        }
    }

    // interreduce the minimal basis
    let mut minimal: Vec<Poly> = (0..basis.polys.len())
        .filter(|&i| basis.active[i])
        .map(|i| basis.polys[i].clone())
        .collect();
    minimal.sort_by(|a, b| order.cmp(a.leading_exp().unwrap(), b.leading_exp().unwrap()));
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others = Basis {
            masks: minimal.iter().map(|p| mask(p.leading_exp().unwrap())).collect(),
            active: (0..minimal.len()).map(|j| j != i).collect(),
            polys: minimal.clone(),
        };
        let head = Poly { terms: vec![minimal[i].terms[0].clone()] };
        let tail = others.reduce(Poly { terms: minimal[i].terms[1..].to_vec() }, order);
        let full = Poly::from_terms(head.terms.into_iter().chain(tail.terms), order);
        reduced.push(full.monic());
    }
    Ok(reduced)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[u16]) -> Exp {
        v.iter().copied().collect()
    }

    fn poly(terms: &[(&[u16], i64)], order: MonomialOrder) -> Poly {
        Poly::from_terms(terms.iter().map(|(x, c)| (e(x), ExactRational::from_integer(*c))), order)
    }

    #[test]
    fn orders() {
        let lex = MonomialOrder::Lex;
        let grl = MonomialOrder::GrevLex;
        assert_eq!(lex.cmp(&[1, 0, 0], &[0, 5, 5]), Ordering::Greater);
        assert_eq!(grl.cmp(&[1, 0, 0], &[0, 5, 5]), Ordering::Less);
        // x*z < y^2 in grevlex with x > y > z
        assert_eq!(grl.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        let el = MonomialOrder::Elimination { block: 1 };
        assert_eq!(el.cmp(&[1, 0, 0], &[0, 9, 9]), Ordering::Greater);
    }

    #[test]
    fn binomial_is_already_a_basis() {
        let o = MonomialOrder::Lex;
        let f = poly(&[(&[1, 0, 1, 0], 1), (&[0, 1, 0, 1], -1)], o);
        let g = groebner(&[f.clone()], o, Budget::default()).unwrap();
        assert_eq!(g, vec![f]);
    }

    #[test]
    fn duplicates_collapse() {
        let o = MonomialOrder::GrevLex;
        let f = poly(&[(&[1, 0], 1)], o);
        assert_eq!(groebner(&[f.clone(), f.clone()], o, Budget::default()).unwrap(), vec![f]);
    }

    #[test]
    fn linear_ideal() {
        let o = MonomialOrder::Lex;
        let f = poly(&[(&[1, 0, 0], 1), (&[0, 1, 0], -1)], o);
        let g = poly(&[(&[0, 1, 0], 1), (&[0, 0, 1], -1)], o);
        let gb = groebner(&[f, g], o, Budget::default()).unwrap();
        let leads: Vec<_> = gb.iter().map(|p| p.leading_exp().unwrap().to_vec()).collect();
        assert_eq!(leads, vec![vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(gb[1], poly(&[(&[1, 0, 0], 1), (&[0, 0, 1], -1)], o));
    }

    #[test]
    fn twisted_cubic() {
        let o = MonomialOrder::GrevLex;
        // 2x2 minors of [[a,b,c],[b,c,d]]
        let m1 = poly(&[(&[1, 0, 1, 0], 1), (&[0, 2, 0, 0], -1)], o);
        let m2 = poly(&[(&[1, 0, 0, 1], 1), (&[0, 1, 1, 0], -1)], o);
        let m3 = poly(&[(&[0, 1, 0, 1], 1), (&[0, 0, 2, 0], -1)], o);
        let gb = groebner(&[m1, m2, m3], o, Budget::default()).unwrap();
        assert_eq!(gb.len(), 3);
    }
}
