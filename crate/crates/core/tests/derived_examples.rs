//! Example values recomputed by brute force inside the tests and compared
//! with the library.

use std::collections::HashSet;
use std::sync::Arc;

use crossalg::equivalence::{gamma, gamma_mor, phi_iso, psi, psi_mor, roundtrip_xmod};
use crossalg::homotopy::{add_derivations, gamma_htpy, homotopy_target, psi_htpy, star, Derivation};
use crossalg::mult_alg::{bimultiplier_space, mu, multiplication_two_algebra, multipliers};
use crossalg::oracle::{self, DEFAULT_CAP};
use crossalg::ring::{all_vectors, vec_ops, ActionTensor, FiniteAlgebra, LinearMap, Submodule, Zm};
use crossalg::two_cat::{TwoAlgMorphism, TwoAlgebra, TwoModule};
use crossalg::xmod::{self, CrossedModule, XModMorphism};

fn z(m: u64) -> Zm {
    Zm::new(m).unwrap()
}

fn dual() -> FiniteAlgebra {
    FiniteAlgebra::truncated_polynomial(z(2), 2)
}

fn ideal() -> CrossedModule {
    xmod::from_ideal(&dual(), &[vec![0, 1]]).unwrap()
}

/// Every `rows x cols` matrix, row-major entries in lexicographic order.
fn all_maps(ring: Zm, rows: usize, cols: usize) -> Vec<LinearMap> {
    all_vectors(ring, rows * cols)
        .map(|v| LinearMap::new(ring, rows, cols, v).unwrap())
        .collect()
}

fn is_multiplier(c: &FiniteAlgebra, l: &LinearMap) -> bool {
    let n = c.rank();
    (0..n).all(|i| (0..n).all(|j| l.apply(&c.basis_product(i, j)) == c.product(&l.column(i), &c.basis(j))))
}

#[test]
fn span_of_two_rows_over_z4_has_eight_elements() {
    let ring = z(4);
    let rows = vec![vec![1, 1], vec![0, 2]];
    let mut brute = HashSet::new();
    for a in 0..4 {
        for b in 0..4 {
            brute.insert(vec![a % 4, (a + 2 * b) % 4]);
        }
    }
    let span = Submodule::span(ring, 2, &rows);
    let listed: HashSet<Vec<u64>> = span.elements(64).unwrap().into_iter().collect();
    assert_eq!(brute.len(), 8);
    assert_eq!(listed, brute);
    assert_eq!(span.cardinality(), 8);
}

#[test]
fn action_counts_match_a_direct_filter() {
    let g = FiniteAlgebra::ground(z(2));
    let triv = FiniteAlgebra::zero_multiplication(z(2), 1);
    let count = |r: &FiniteAlgebra, c: &FiniteAlgebra| {
        all_vectors(z(2), r.rank() * c.rank() * c.rank())
            .filter(|t| {
                let a = ActionTensor::new(z(2), r.rank(), c.rank(), t.clone()).unwrap();
                a.check(r, c, true).passed()
            })
            .count()
    };
    for (r, c, expected) in [(&g, &triv, 1), (&g, &g, 1), (&dual(), &triv, 1)] {
        assert_eq!(count(r, c), expected);
        assert_eq!(oracle::enumerate_actions(r, c, DEFAULT_CAP).unwrap().len(), expected);
    }
}

#[test]
fn multipliers_match_brute_force() {
    for (c, rank) in [(FiniteAlgebra::ground(z(2)), 1), (dual(), 2)] {
        let brute = all_maps(z(2), c.rank(), c.rank())
            .into_iter()
            .filter(|l| is_multiplier(&c, l))
            .count();
        let m = multipliers(&c).unwrap();
        assert_eq!(m.rank(), rank);
        assert_eq!(brute, 1 << rank);
        assert!(mu(&m).unwrap().kernel().is_zero());
    }
    let m = multipliers(&FiniteAlgebra::ground(z(2))).unwrap();
    assert!(mu(&m).unwrap().is_identity());
}

#[test]
fn bimultipliers_match_brute_force() {
    let count = |c: &FiniteAlgebra| {
        let maps = all_maps(z(2), c.rank(), c.rank());
        let n = c.rank();
        let mut pairs = Vec::new();
        for g in &maps {
            for d in &maps {
                let ok = (0..n).all(|i| {
                    (0..n).all(|j| {
                        let cij = c.basis_product(i, j);
                        g.apply(&cij) == c.product(&g.column(i), &c.basis(j))
                            && d.apply(&cij) == c.product(&c.basis(i), &d.column(j))
                            && c.product(&c.basis(i), &g.column(j)) == c.product(&d.column(i), &c.basis(j))
                    })
                });
                if ok {
                    pairs.push((g.clone(), d.clone()));
                }
            }
        }
        pairs
    };
    let g = FiniteAlgebra::ground(z(2));
    let pairs = count(&g);
    assert_eq!(pairs.len(), 2);
    assert!(pairs.iter().all(|(a, b)| a == b));
    assert_eq!(bimultiplier_space(&g).cardinality(), 2);

    let triv = FiniteAlgebra::zero_multiplication(z(2), 1);
    assert_eq!(count(&triv).len(), 4);
    assert_eq!(bimultiplier_space(&triv).cardinality(), 4);
}

#[test]
fn projection_two_module_passes_exhaustively() {
    let ring = z(2);
    let p = LinearMap::new(ring, 1, 2, vec![1, 0]).unwrap();
    let t = TwoModule::new(p.clone(), p.clone(), p.transpose()).unwrap();
    assert!(t.check().passed());
    assert!(t.check_exhaustive(DEFAULT_CAP).unwrap().passed());
    let mut pairs = 0;
    for a in all_vectors(ring, 2) {
        for b in all_vectors(ring, 2) {
            if p.apply(&a) == p.apply(&b) {
                pairs += 1;
                let c = t.compose_cells(&a, &b).unwrap();
                assert_eq!(p.apply(&c), p.apply(&a));
            }
        }
    }
    assert_eq!(pairs, t.composable_pairs().cardinality());
}

#[test]
fn psi_of_precrossed_specimen_has_nonzero_defect() {
    let g = FiniteAlgebra::ground(z(2));
    let x = CrossedModule::new(g.clone(), g, LinearMap::zero(z(2), 1, 1), ActionTensor::new(z(2), 1, 1, vec![1]).unwrap())
        .unwrap();
    let a = psi(&x);
    assert_eq!(a.a1().rank(), 2);
    assert!(a.check_exhaustive(DEFAULT_CAP).unwrap().fails("ICHG-EXH"));
    let mut defects = 0;
    let cells: Vec<Vec<u64>> = all_vectors(z(2), 2).collect();
    for f1 in &cells {
        for f2 in &cells {
            for g1 in &cells {
                for g2 in &cells {
                    if let Ok(d) = a.interchange_defect(f1, f2, g1, g2) {
                        defects += usize::from(!vec_ops::is_zero(&d));
                    }
                }
            }
        }
    }
    assert!(defects > 0);
    let [f1, f2, g1, g2] = a.interchange_counterexample().unwrap().unwrap();
    assert!(!vec_ops::is_zero(&a.interchange_defect(&f1, &f2, &g1, &g2).unwrap()));
}

#[test]
fn multiplication_two_algebras() {
    let a = multiplication_two_algebra(&FiniteAlgebra::ground(z(2))).unwrap();
    assert_eq!(a.a1().rank(), 2);
    assert!(a.check_exhaustive(DEFAULT_CAP).unwrap().passed());
    assert!(phi_iso(&a).unwrap().passed());

    let c = dual();
    let a = multiplication_two_algebra(&c).unwrap();
    let g = gamma(&a).unwrap();
    assert!(g.xmod.same_data(&xmod::from_multiplication(&c).unwrap()));
}

#[test]
fn psi_of_ideal_inclusion() {
    let a = psi(&ideal());
    assert_eq!((a.a0().rank(), a.a1().rank()), (2, 3));
    assert!(a.check_exhaustive(DEFAULT_CAP).unwrap().passed());
    assert!(roundtrip_xmod(&ideal()).unwrap().passed());
    assert!(roundtrip_xmod(&xmod::from_multiplication(&FiniteAlgebra::ground(z(2))).unwrap()).unwrap().passed());
}

#[test]
fn gamma_of_psi_morphism_is_the_morphism() {
    let x = Arc::new(ideal());
    let fs = oracle::enumerate_xmod_morphisms(&x, &x, DEFAULT_CAP).unwrap();
    assert!(!fs.is_empty());
    for f in fs {
        let back = gamma_mor(&psi_mor(&f)).unwrap();
        assert_eq!(back.f1(), f.f1());
        assert_eq!(back.f0(), f.f0());
    }
}

/// `h(rr′) = f0(r)▶h(r′) + f0(r′)▶h(r) + h(r)h(r′)` and `h(1) = 0`,
/// checked on all element pairs.
fn derivation_by_elements(f: &XModMorphism, h: &LinearMap) -> bool {
    let (x, y) = (f.source(), f.target());
    let ring = h.ring();
    let elems: Vec<Vec<u64>> = all_vectors(ring, x.r().rank()).collect();
    elems.iter().all(|r| {
        elems.iter().all(|s| {
            let lhs = h.apply(&x.r().product(r, s));
            let terms = [
                y.act(&f.f0().apply(r), &h.apply(s)),
                y.act(&f.f0().apply(s), &h.apply(r)),
                y.c().product(&h.apply(r), &h.apply(s)),
            ];
            let rhs = terms.iter().fold(vec![0; y.c().rank()], |acc, t| vec_ops::add(ring, &acc, t));
            lhs == rhs
        })
    }) && vec_ops::is_zero(&h.apply(x.r().unit().unwrap()))
}

#[test]
fn derivations_on_the_ideal_identity() {
    let f = XModMorphism::identity(Arc::new(ideal()));
    let brute: Vec<LinearMap> = all_maps(z(2), 1, 2)
        .into_iter()
        .filter(|h| derivation_by_elements(&f, h))
        .collect();
    let found = oracle::enumerate_derivations(&f, DEFAULT_CAP).unwrap();
    assert_eq!(brute.len(), 2);
    assert_eq!(found.iter().map(|d| d.map().clone()).collect::<Vec<_>>(), brute);

    let nonzero = found.iter().find(|d| !d.map().is_zero()).unwrap();
    let h = homotopy_target(nonzero).unwrap();
    assert!(!h.g.same_maps(&h.f));
    assert!(h.g.check().passed());

    // over Z/2 the negated derivation is the same map, based at g
    let back = Derivation::new(h.g.clone(), nonzero.map().neg()).unwrap();
    assert!(back.check().passed());
    let h2 = homotopy_target(&back).unwrap();
    let sum = add_derivations(&h, &h2).unwrap();
    assert!(sum.d.map().is_zero());
    assert!(sum.g.same_maps(&f));
}

#[test]
fn zero_boundary_derivations_match_brute_force() {
    let r = dual();
    let m = FiniteAlgebra::zero_multiplication(z(2), 1);
    let act = ActionTensor::new(z(2), 2, 1, vec![1, 0]).unwrap();
    let x = Arc::new(xmod::from_module(&m, &r, &act).unwrap());
    for f in oracle::enumerate_xmod_morphisms(&x, &x, DEFAULT_CAP).unwrap() {
        let brute = all_maps(z(2), 1, 2)
            .into_iter()
            .filter(|h| derivation_by_elements(&f, h))
            .count();
        assert_eq!(oracle::enumerate_derivations(&f, DEFAULT_CAP).unwrap().len(), brute);
    }
}

#[test]
fn star_is_associative_and_transport_round_trips() {
    let f = XModMorphism::identity(Arc::new(ideal()));
    let d = oracle::enumerate_derivations(&f, DEFAULT_CAP).unwrap().pop().unwrap();
    let h = homotopy_target(&d).unwrap();
    let h2 = homotopy_target(&Derivation::new(h.g.clone(), d.map().clone()).unwrap()).unwrap();
    let h3 = homotopy_target(&Derivation::zero(h2.g.clone())).unwrap();
    let (a, b, c) = (psi_htpy(&h).unwrap(), psi_htpy(&h2).unwrap(), psi_htpy(&h3).unwrap());
    let left = star(&star(&a, &b).unwrap(), &c).unwrap();
    let right = star(&a, &star(&b, &c).unwrap()).unwrap();
    assert_eq!(left.delta(), right.delta());
    assert!(left.check().passed());

    let back = gamma_htpy(&a).unwrap();
    assert_eq!(back.d.map(), d.map());
    assert_eq!(psi_htpy(&back).unwrap(), a);
}

#[test]
fn two_algebra_homotopies_biject_with_derivations() {
    let x = Arc::new(ideal());
    let fs = oracle::enumerate_xmod_morphisms(&x, &x, DEFAULT_CAP).unwrap();
    for f in &fs {
        for g in &fs {
            let ders: Vec<_> = oracle::enumerate_derivations(f, DEFAULT_CAP)
                .unwrap()
                .into_iter()
                .filter_map(|d| homotopy_target(&d).ok())
                .filter(|h| h.g.same_maps(g))
                .collect();
            let hs = oracle::enumerate_two_alg_homotopies(&psi_mor(f), &psi_mor(g), DEFAULT_CAP).unwrap();
            assert_eq!(hs.len(), ders.len());
            for h in &ders {
                assert!(hs.contains(&psi_htpy(h).unwrap()));
            }
        }
    }
}

#[test]
fn no_homotopy_between_different_discrete_morphisms() {
    let a = Arc::new(TwoAlgebra::discrete(&dual()).unwrap());
    let id = TwoAlgMorphism::identity(a.clone());
    // 1 ↦ 1, x ↦ 0
    let p = LinearMap::new(z(2), 2, 2, vec![1, 0, 0, 0]).unwrap();
    let collapse = TwoAlgMorphism::new(a.clone(), a, p.clone(), p).unwrap();
    assert!(collapse.check().passed());
    assert!(oracle::enumerate_two_alg_homotopies(&id, &collapse, DEFAULT_CAP).unwrap().is_empty());
}

#[test]
fn census_has_a_unital_precrossed_specimen() {
    let g = FiniteAlgebra::ground(z(2));
    let census = oracle::enumerate_crossed_modules(&g, &g, DEFAULT_CAP).unwrap();
    let pre: Vec<_> = census.pre_crossed_only().collect();
    assert!(!pre.is_empty());
    assert!(pre.iter().all(|x| x.c().unit().is_some()));

    let triv = FiniteAlgebra::zero_multiplication(z(2), 1);
    let brute = all_maps(z(2), 1, 1)
        .into_iter()
        .filter(|b| {
            let x = CrossedModule::new(triv.clone(), g.clone(), b.clone(), ActionTensor::new(z(2), 1, 1, vec![1]).unwrap())
                .unwrap();
            x.is_crossed()
        })
        .count();
    assert_eq!(brute, 1);
    assert_eq!(oracle::enumerate_crossed_modules(&g, &triv, DEFAULT_CAP).unwrap().crossed_count(), 1);
}
