use curvres_core::dual::{
    epd_pipeline, equivariant_dual, groebner::groebner, initial_ideal, multidegree_monomial, nk_coordinates, qk_lookup,
    Budget, Exp, MonomialIdeal, MonomialOrder, Poly, TorusWeight, WeightedIdeal,
};
use curvres_core::{ExactRational, GradedDegree, MultiPoly, SymbolId};

const ORDER: MonomialOrder = MonomialOrder::GrevLex;

fn poly(nvars: usize, terms: &[(i64, &[u16])]) -> Poly {
    Poly::from_terms(
        terms.iter().map(|(c, e)| {
            let mut x: Exp = std::iter::repeat(0).take(nvars).collect();
            x[..e.len()].copy_from_slice(e);
            (x, ExactRational::from_integer(*c))
        }),
        ORDER,
    )
}

fn weights(rows: &[&[i64]]) -> Vec<TorusWeight> {
    rows.iter().map(|r| TorusWeight::new(r.to_vec())).collect()
}

/// Weights of the toric example: `η_4 = η_1 + η_3 − η_2`.
fn toric_weights() -> Vec<TorusWeight> {
    weights(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, -1, 1]])
}

fn dual(gens: Vec<Poly>, w: Vec<TorusWeight>) -> MultiPoly {
    let names = WeightedIdeal::default_names(w.len());
    let ideal = WeightedIdeal::new(gens, w, names).unwrap();
    equivariant_dual(&ideal, ORDER, Budget::default()).unwrap()
}

fn p(s: &str) -> MultiPoly {
    s.parse().unwrap()
}

#[test]
fn toric_hypersurface() {
    let f = poly(4, &[(1, &[1, 0, 1, 0]), (-1, &[0, 1, 0, 1])]);
    let w = toric_weights();
    let lex = WeightedIdeal::new(vec![f.clone()], w.clone(), WeightedIdeal::default_names(4)).unwrap();
    let init = initial_ideal(&lex, MonomialOrder::Lex, Budget::default()).unwrap();
    assert_eq!(init.generators().len(), 1);
    assert_eq!(init.generators()[0].as_slice(), &[1, 0, 1, 0]);
    // η1 + η3 = η2 + η4 under the relation
    assert_eq!(dual(vec![f.clone()], w.clone()), p("z1 + z3"));
    assert_eq!(equivariant_dual(&lex, MonomialOrder::Lex, Budget::default()).unwrap(), p("z1 + z3"));
}

#[test]
fn linear_ideal_staircase() {
    let gens = vec![poly(3, &[(1, &[1, 0, 0]), (-1, &[0, 1, 0])]), poly(3, &[(1, &[0, 1, 0]), (-1, &[0, 0, 1])])];
    for order in [MonomialOrder::Lex, MonomialOrder::GrevLex] {
        let gb = groebner(&gens, order, Budget::default()).unwrap();
        let mut leads: Vec<Vec<u16>> = gb.iter().map(|g| g.leading_exp().unwrap().to_vec()).collect();
        leads.sort();
        assert_eq!(leads, vec![vec![0, 1, 0], vec![1, 0, 0]]);
    }
}

#[test]
fn elimination_property() {
    let w = toric_weights();
    let toric = poly(5, &[(1, &[1, 0, 1, 0]), (-1, &[0, 1, 0, 1])]);
    let bases: Vec<Vec<Poly>> = vec![
        vec![toric.clone()],
        vec![poly(5, &[(1, &[2])])],
        vec![poly(5, &[(1, &[1, 1])]), poly(5, &[(1, &[0, 0, 1])])],
        vec![],
        vec![toric.clone(), poly(5, &[(1, &[0, 0, 0, 2])])],
    ];
    // (f, weight of f)
    let fs: Vec<(Poly, Vec<i64>)> = vec![
        (poly(5, &[(1, &[1, 0, 1, 0]), (3, &[0, 1, 0, 1])]), vec![1, 0, 1]),
        (poly(5, &[(1, &[0, 2])]), vec![0, 2, 0]),
    ];
    let mut count = 0;
    for base in &bases {
        for (f, fw) in &fs {
            let eps = {
                let gens4: Vec<Poly> = base.iter().map(|g| g.project(0..4, ORDER)).collect();
                dual(gens4, w.clone())
            };
            let mut w5 = w.clone();
            w5.push(TorusWeight::new(fw.clone()));
            let mut gens = base.clone();
            gens.push(poly(5, &[(1, &[0, 0, 0, 0, 1])]).sub(f, ORDER));
            let lifted = dual(gens, w5);
            let eta0 = TorusWeight::new(fw.clone()).to_poly();
            assert_eq!(lifted, eta0.mul(&eps), "base {count}");
            count += 1;
        }
    }
    assert_eq!(count, 10);
}

#[test]
fn additivity_over_components() {
    let w4 = weights(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
    let mono = |gens: &[&[u16]]| {
        let ideal = MonomialIdeal::new(
            4,
            gens.iter().map(|g| {
                let mut e: Exp = std::iter::repeat(0).take(4).collect();
                e[..g.len()].copy_from_slice(g);
                e
            }).collect(),
        );
        multidegree_monomial(&ideal, &w4).unwrap()
    };
    // (y1) ∩ (y2)
    assert_eq!(mono(&[&[1, 1]]), p("z1 + z2"));
    // (y1, y2) ∩ (y3, y4)
    assert_eq!(mono(&[&[1, 0, 1], &[1, 0, 0, 1], &[0, 1, 1], &[0, 1, 0, 1]]), p("z1*z2 + z3*z4"));
    // (y1^2) ∩ (y2): multiplicity two on the first component
    assert_eq!(mono(&[&[2, 1]]), p("2*z1 + z2"));
    // embedded components do not contribute
    assert_eq!(mono(&[&[2], &[1, 1]]), p("z1"));
    // a product with a non-monomial component
    let w = toric_weights();
    let f = poly(4, &[(1, &[2, 0, 1, 0]), (-1, &[1, 1, 0, 1])]);
    assert_eq!(dual(vec![f], w.clone()), p("2*z1 + z3"));
    let g = poly(4, &[(1, &[1, 0, 1, 0]), (-1, &[0, 1, 0, 1])]);
    assert_eq!(
        dual(vec![g], w.clone()).add(&dual(vec![poly(4, &[(1, &[1])])], w)),
        p("2*z1 + z3")
    );
}

fn min_cover_size(ideal: &MonomialIdeal) -> usize {
    let n = ideal.nvars();
    if ideal.is_zero() {
        return 0;
    }
    (0..=n)
        .find(|&size| {
            (0u32..1 << n).filter(|m| m.count_ones() as usize == size).any(|m| {
                ideal.generators().iter().all(|g| (0..n).any(|i| m & (1 << i) != 0 && g[i] > 0))
            })
        })
        .unwrap()
}

#[test]
fn orbit_duals_match_the_table() {
    for k in 2..=4 {
        let (mdeg, orbit) = epd_pipeline(k, Budget::default()).unwrap();
        assert_eq!(mdeg, qk_lookup(k).unwrap(), "k = {k}");

        // homogeneous of degree codim of the orbit closure
        let init = initial_ideal(&orbit.ideal, MonomialOrder::GrevLex, Budget::default()).unwrap();
        let GradedDegree::Homogeneous(d) = mdeg.graded_degree() else { panic!() };
        assert_eq!(d as usize, min_cover_size(&init));

        // deg in z_m bounded by the number of coordinates whose weight involves z_m
        for m in 1..=k {
            let involved = nk_coordinates(k).iter().filter(|c| c.weight(k).coeffs[m - 1] != 0).count();
            assert!(mdeg.degree_in(SymbolId::z(m)) as usize <= involved);
        }
    }
}

#[test]
fn degree_bound_on_constructed_ideals() {
    let w = toric_weights();
    let cases = vec![
        vec![poly(4, &[(1, &[1, 0, 1, 0]), (-1, &[0, 1, 0, 1])])],
        vec![poly(4, &[(1, &[2, 0, 1])]), poly(4, &[(1, &[0, 3])])],
    ];
    for gens in cases {
        let d = dual(gens, w.clone());
        for m in 1..=3 {
            let involved = w.iter().filter(|x| x.coeffs[m - 1] != 0).count();
            assert!(d.degree_in(SymbolId::z(m)) as usize <= involved);
        }
    }
}

#[test]
fn orbit_audit_lists_generators() {
    let (_, orbit) = epd_pipeline(4, Budget::default()).unwrap();
    let text = orbit.audit_text();
    assert!(text.contains("q12_3*q13_4 - 4*q11_2*q22_4"), "{text}");
}
