use std::sync::Arc;

use super::*;
use crate::algebra::{Alg, Congruence, Homomorphism};
use crate::corpus::algebras::{cyclic_group, terminal_like};
use crate::corpus::groupoids::{congruence_groupoid, one_object_groupoid, pair_groupoid};
use crate::reflection::{h1, pi1};
use crate::simplicial::{constant, coskeleton, decalage, nerve, Sim, SimplicialMorphism};

fn z(n: usize) -> Alg {
    Arc::new(cyclic_group(n).unwrap())
}

fn to_terminal(x: &Sim) -> SimplicialMorphism {
    let one = terminal_like(x.level(0));
    let t: Sim = Arc::new(constant(&one, x.truncation()).unwrap());
    let comps = (0..=x.truncation())
        .map(|n| Homomorphism::from_fn(x.level(n).clone(), one.clone(), |_| 0).unwrap())
        .collect();
    SimplicialMorphism::new(x.clone(), t, comps).unwrap()
}

fn dec_counit(k: usize, top: usize) -> SimplicialMorphism {
    let n = nerve(&one_object_groupoid(&z(k), 0).unwrap(), top + 1).unwrap();
    decalage(&n.sim).unwrap().1
}

#[test]
fn identity_is_trivial() {
    let x = nerve(&pair_groupoid(&z(2)).unwrap(), 3).unwrap().sim;
    let r = classify_extension(&SimplicialMorphism::identity(&x)).unwrap();
    assert!(r.trivial && r.central && r.normal);
    assert_eq!(r.exact_fibration, Some(true));
}

#[test]
fn groupoid_to_terminal_is_trivial() {
    let x = nerve(
        &congruence_groupoid(&Congruence::principal(&z(4), 0, 2)).unwrap(),
        3,
    )
    .unwrap()
    .sim;
    let r = classify_extension(&to_terminal(&x)).unwrap();
    assert!(r.trivial);
}

#[test]
fn decalage_counit_routes_agree() {
    let eps = dec_counit(4, 2);
    let r = classify_extension(&eps).unwrap();
    assert_eq!(r.central_by_conditions, r.central_by_definition);
    assert_eq!(r.trivial_by_lattice, r.trivial_by_comparison);
    for h in &r.horn_squares {
        assert_eq!(h.meet_discrete, h.theta_bijective);
    }
}

#[test]
fn non_groupoid_to_terminal_is_not_trivial() {
    let sq = {
        let a = z(2);
        let p = crate::algebra::product(&[a.clone(), a.clone()]).unwrap();
        let pi = p.projection(0).clone();
        let s0 = Homomorphism::from_fn(a, p.alg().clone(), |x| p.index_of(&[x as u32, 0]).unwrap())
            .unwrap();
        crate::corpus::groupoids::reflexive_graph("sq", pi.clone(), pi, s0).unwrap()
    };
    let x: Sim = Arc::new(coskeleton(&sq, 2).unwrap());
    let r = classify_extension(&to_terminal(&x)).unwrap();
    assert!(!r.trivial);
    assert!(!r.witnesses.is_empty());
    assert_eq!(r.central_by_conditions, r.central_by_definition);
}

#[test]
fn em_of_trivial_has_invertible_e() {
    let x = nerve(&pair_groupoid(&z(2)).unwrap(), 2).unwrap().sim;
    let fz = em_factorization(&to_terminal(&x)).unwrap();
    assert!(fz.e.is_levelwise_bijective());
}

#[test]
fn em_of_unit_has_invertible_m() {
    let eps = dec_counit(2, 2);
    let r = pi1(eps.dom()).unwrap();
    let fz = em_factorization(&r.eta).unwrap();
    assert!(fz.m.is_levelwise_bijective());
}

fn square_coskeleton() -> Sim {
    let a = z(2);
    let p = crate::algebra::product(&[a.clone(), a.clone()]).unwrap();
    let pi = p.projection(0).clone();
    let s0 =
        Homomorphism::from_fn(a, p.alg().clone(), |x| p.index_of(&[x as u32, 0]).unwrap()).unwrap();
    let sq = crate::corpus::groupoids::reflexive_graph("sq", pi.clone(), pi, s0).unwrap();
    Arc::new(coskeleton(&sq, 2).unwrap())
}

#[test]
fn em_of_decalage_counit_has_invertible_e() {
    // the décalage of a groupoid nerve is again a groupoid nerve, so the
    // counit is trivial
    let eps = dec_counit(2, 2);
    let fz = em_factorization(&eps).unwrap();
    let c = fz.e.then(&fz.m).unwrap();
    assert!(c
        .components()
        .iter()
        .zip(eps.components())
        .all(|(a, b)| a.same_map(b)));
    assert!(fz.e.is_levelwise_bijective());
    assert!(is_trivial_extension(&eps).unwrap());
}

#[test]
fn em_of_non_groupoid_to_terminal_has_two_proper_parts() {
    let x = square_coskeleton();
    let f = to_terminal(&x);
    let fz = em_factorization(&f).unwrap();
    let c = fz.e.then(&fz.m).unwrap();
    assert!(c
        .components()
        .iter()
        .zip(f.components())
        .all(|(a, b)| a.same_map(b)));
    assert!(!fz.e.is_levelwise_bijective());
    assert!(!fz.m.is_levelwise_bijective());
}

#[test]
fn ml_of_central_is_identity() {
    let x = nerve(&pair_groupoid(&z(2)).unwrap(), 2).unwrap().sim;
    let r = ml_factorization(&SimplicialMorphism::identity(&x), ML_NODE_BUDGET).unwrap();
    assert!(r.theta.is_discrete());
    assert!(r.factorization.e.is_levelwise_bijective());
}

#[test]
fn ml_of_decalage_counit_is_minimal() {
    let eps = dec_counit(2, 2);
    let r = ml_factorization(&eps, ML_NODE_BUDGET).unwrap();
    assert_eq!(r.minimal_successes, 1);
    assert!(r.samples_inverted);
    assert!(is_central_extension(&r.factorization.m).unwrap());
    for smaller in congruences_below(eps.dom(), &r.theta, ML_NODE_BUDGET).unwrap() {
        let (q, proj) = crate::simplicial::quotient(eps.dom(), &smaller).unwrap();
        let comps = (0..=2)
            .map(|n| {
                let classes = smaller.level(n).classes();
                Homomorphism::new(
                    q.level(n).clone(),
                    eps.cod().level(n).clone(),
                    classes
                        .iter()
                        .map(|c| eps.component(n).map()[c[0]])
                        .collect(),
                )
                .unwrap()
            })
            .collect();
        let m = SimplicialMorphism::new(q, eps.cod().clone(), comps).unwrap();
        assert!(proj
            .then(&m)
            .unwrap()
            .components()
            .iter()
            .zip(eps.components())
            .all(|(a, b)| a.same_map(b)));
        assert!(!is_central_extension(&m).unwrap());
    }
}

#[test]
fn homotopy_relation_examples() {
    let x = nerve(&pair_groupoid(&z(3)).unwrap(), 2).unwrap().sim;
    assert!(homotopy_relation(&x).unwrap().is_discrete());
    let eps = dec_counit(2, 2);
    let h = homotopy_relation(eps.dom()).unwrap();
    assert_eq!(h, h1(eps.dom()).unwrap());
}

#[test]
fn relative_homotopy_examples() {
    let eps = dec_counit(2, 2);
    let r = relative_homotopy_relation(&eps).unwrap();
    assert!(r.matches());
    let id = SimplicialMorphism::identity(eps.dom());
    let r = relative_homotopy_relation(&id).unwrap();
    assert!(r.degenerate_formula.is_discrete());
    let t = relative_homotopy_relation(&to_terminal(eps.dom())).unwrap();
    assert_eq!(t.limit_image, homotopy_relation(eps.dom()).unwrap());
}

#[test]
fn exactness_lemma_on_unit_and_identity() {
    let eps = dec_counit(2, 3);
    let r = pi1(eps.dom()).unwrap();
    assert!(exactness_lemma_check(&r.eta).unwrap());
    assert!(exactness_lemma_check(&SimplicialMorphism::identity(eps.dom())).unwrap());
    assert!(exactness_lemma_check(&eps).unwrap());
}

#[test]
fn stabilizing_probe_on_identity_and_counit() {
    // décalages of Kan objects are exact; nerves with nontrivial loops are
    // not exact at level 2
    let eps = dec_counit(2, 2);
    assert!(!crate::simplicial::exactness_check(eps.cod(), 2).unwrap());
    let dec = eps.dom().clone();
    assert!(stabilizing_probe(&SimplicialMorphism::identity(&dec), &|_| Ok(Vec::new())).unwrap());
    let x = square_coskeleton();
    let prod = crate::simplicial::levelwise_product(&x, &dec).unwrap();
    assert!(
        stabilizing_probe(&prod.p2, &|e| Ok(vec![SimplicialMorphism::identity(
            e.cod()
        )]))
        .unwrap()
    );
}
