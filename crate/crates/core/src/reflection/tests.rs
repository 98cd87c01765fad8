use std::sync::Arc;

use super::*;
use crate::algebra::{product, Alg, Congruence, Homomorphism};
use crate::corpus::algebras::{cyclic_group, heyting_chain, heyting_diamond, symmetric_group_3};
use crate::corpus::groupoids::{
    congruence_groupoid, one_object_groupoid, pair_groupoid, reflexive_graph,
};
use crate::simplicial::{
    constant, coskeleton, decalage, nerve, quotient, Sim, SimplicialCongruence, SimplicialMorphism,
};

fn alg(a: crate::algebra::FiniteAlgebra) -> Alg {
    Arc::new(a)
}

/// `A×A ⇉ A` with both faces the first projection; the section is
/// `x ↦ (x, 0)` for groups and the diagonal otherwise.
fn square_graph(a: &Alg) -> Sim {
    let p = product(&[a.clone(), a.clone()]).unwrap();
    let pi = p.projection(0).clone();
    let zero = a.signature().index_of("zero").map(|z| a.apply(z, &[]));
    let s0 = Homomorphism::from_fn(a.clone(), p.alg().clone(), |x| {
        p.index_of(&[x as u32, zero.unwrap_or(x) as u32]).unwrap()
    })
    .unwrap();
    reflexive_graph("square", pi.clone(), pi, s0).unwrap()
}

fn coset_nerve(n: usize, d: usize, top: usize) -> Sim {
    let z = alg(cyclic_group(n).unwrap());
    let theta = Congruence::principal(&z, 0, d);
    nerve(&congruence_groupoid(&theta).unwrap(), top)
        .unwrap()
        .sim
}

#[test]
fn nerves_are_groupoids() {
    let x = coset_nerve(6, 2, 3);
    let c = is_internal_groupoid(&x).unwrap();
    assert!(c.holds);
    assert!(c.conditions_agree());
    assert!(c.levels.iter().all(|l| l.all_pairs_discrete));
}

#[test]
fn coskeleton_of_square_graph_is_not_a_groupoid() {
    let z2 = alg(cyclic_group(2).unwrap());
    let c = coskeleton(&square_graph(&z2), 3).unwrap();
    let r = is_internal_groupoid(&c).unwrap();
    assert!(!r.holds);
    assert_eq!(r.first_failing_level, Some(2));
    let (a, b) = r.witness.unwrap();
    assert_ne!(a, b);
    assert_eq!(c.d(2, 0).apply(a), c.d(2, 0).apply(b));
    assert_eq!(c.d(2, 2).apply(a), c.d(2, 2).apply(b));
    assert!(r.conditions_agree());
}

#[test]
fn quotient_of_nerve_is_groupoid() {
    let z4 = alg(cyclic_group(4).unwrap());
    let x = nerve(&pair_groupoid(&z4).unwrap(), 3).unwrap().sim;
    let theta = SimplicialCongruence::principal(&x, 1, 0, x.s(0, 0).apply(2));
    let (q, _) = quotient(&x, &theta).unwrap();
    assert!(is_internal_groupoid(&q).unwrap().holds);
}

#[test]
fn h1_of_nerve_is_discrete() {
    let x = coset_nerve(4, 2, 3);
    assert!(h1(&x).unwrap().is_discrete());
    for n in 2..=3 {
        assert!(hn(&x, n).unwrap().is_discrete());
    }
}

#[test]
fn h1_of_coskeleton_is_d0_meet_d1() {
    let z2 = alg(cyclic_group(2).unwrap());
    let g = square_graph(&z2);
    let c = coskeleton(&g, 3).unwrap();
    let h = h1(&c).unwrap();
    assert_eq!(h, c.face_meet(1, 0, 1));
    // the fibers of the first projection
    assert_eq!(h, Congruence::kernel_pair(g.d(1, 0)));
}

#[test]
fn h2_is_join_of_three_meets() {
    let z2 = alg(cyclic_group(2).unwrap());
    let c = coskeleton(&square_graph(&z2), 2).unwrap();
    let m01 = c.face_meet(2, 0, 1);
    let m02 = c.face_meet(2, 0, 2);
    let m12 = c.face_meet(2, 1, 2);
    let j = m01.join(&m02).unwrap().join(&m12).unwrap();
    assert_eq!(hn(&c, 2).unwrap(), j);
}

#[test]
fn heyting_coskeleton_h1_is_d0_meet_d1() {
    let cases = [
        (alg(heyting_chain(2).unwrap()), 3),
        (alg(heyting_chain(3).unwrap()), 2),
        (alg(heyting_diamond()), 2),
    ];
    for (h, top) in cases {
        let c = coskeleton(&square_graph(&h), top).unwrap();
        assert_eq!(h1(&c).unwrap(), c.face_meet(1, 0, 1));
        let r = pi1(&Arc::new(c)).unwrap();
        assert!(r.pi1.is_equivalence_relation());
    }
}

#[test]
fn pi1_of_nerve_is_bijective() {
    let x = coset_nerve(6, 3, 3);
    let r = pi1(&x).unwrap();
    assert!(r.eta.is_levelwise_bijective());
    assert_eq!(r.nerve.sim.level_sizes(), x.level_sizes());
}

#[test]
fn pi1_of_square_coskeleton_is_discrete() {
    let z2 = alg(cyclic_group(2).unwrap());
    let c = Arc::new(coskeleton(&square_graph(&z2), 3).unwrap());
    let r = pi1(&c).unwrap();
    assert_eq!(r.pi1.x1().size(), 2);
    assert_eq!(r.pi1.x0().size(), 2);
    assert!(r.pi1.d0().is_bijective());
    assert!(r.pi1.d0().same_map(r.pi1.d1()));
}

#[test]
fn pi1_of_decalage_matches_brute_force_h1() {
    let z4 = alg(cyclic_group(4).unwrap());
    let n = nerve(&one_object_groupoid(&z4, 0).unwrap(), 4).unwrap();
    let (dec, _) = decalage(&n.sim).unwrap();
    let r = pi1(&dec).unwrap();
    // brute force: x ~ y in X1 iff some 2-simplex has d1 = x and some other
    // with d1 = y share d0 and d2
    let x2 = dec.level(2);
    let x1 = dec.level(1);
    let mut pairs = Vec::new();
    for a in 0..x2.size() {
        for b in 0..x2.size() {
            if dec.d(2, 0).apply(a) == dec.d(2, 0).apply(b)
                && dec.d(2, 2).apply(a) == dec.d(2, 2).apply(b)
            {
                pairs.push((dec.d(2, 1).apply(a), dec.d(2, 1).apply(b)));
            }
        }
    }
    let oracle = Congruence::discrete(x1).with_pairs(pairs);
    assert_eq!(r.h[1], oracle);
    assert_eq!(r.pi1.x0().size(), 4);
    // a contractible object reflects to the pair groupoid on its vertices
    assert_eq!(r.pi1.x1().size(), 16);
    assert!(r.pi1.is_equivalence_relation());
}

#[test]
fn unit_factors_through_itself_and_constants_factor() {
    let z2 = alg(cyclic_group(2).unwrap());
    let x = Arc::new(coskeleton(&square_graph(&z2), 2).unwrap());
    let r = pi1(&x).unwrap();
    assert!(universal_property_with(&r, &r.eta).unwrap().factors);
    let one = alg(cyclic_group(1).unwrap());
    let terminal = Arc::new(constant(&one, 2).unwrap());
    let bang = SimplicialMorphism::new(
        x.clone(),
        terminal.clone(),
        (0..=2)
            .map(|n| Homomorphism::from_fn(x.level(n).clone(), one.clone(), |_| 0).unwrap())
            .collect(),
    )
    .unwrap();
    assert!(universal_property_check(&bang).unwrap().factors);
}

#[test]
fn universal_property_exhaustive_small() {
    let z2 = alg(cyclic_group(2).unwrap());
    let x = Arc::new(coskeleton(&square_graph(&z2), 2).unwrap());
    let r = pi1(&x).unwrap();
    let targets = [
        nerve(&pair_groupoid(&z2).unwrap(), 2).unwrap().sim,
        nerve(&congruence_groupoid(&Congruence::discrete(&z2)).unwrap(), 2)
            .unwrap()
            .sim,
        nerve(&one_object_groupoid(&z2, 0).unwrap(), 2).unwrap().sim,
    ];
    let mut total = 0;
    for y in &targets {
        for f in morphisms_into_groupoid(&x, y, 1 << 20).unwrap() {
            assert!(universal_property_with(&r, &f).unwrap().factors);
            total += 1;
        }
    }
    assert!(total > 0);
}

#[test]
fn graph_reflection_of_product_graph_is_pair_groupoid() {
    let s3 = alg(symmetric_group_3());
    let p = product(&[s3.clone(), s3.clone()]).unwrap();
    let diag = Homomorphism::from_fn(s3.clone(), p.alg().clone(), |a| {
        p.index_of(&[a as u32, a as u32]).unwrap()
    })
    .unwrap();
    let g = reflexive_graph(
        "S3xS3",
        p.projection(1).clone(),
        p.projection(0).clone(),
        diag,
    )
    .unwrap();
    let r = graph_reflection(&g).unwrap();
    // the kernels 1×S3 and S3×1 commute elementwise
    assert!(r.commutator.is_discrete());
    assert_eq!(r.groupoid.x1().size(), 36);
    assert!(r.groupoid.is_equivalence_relation());
}

#[test]
fn graph_reflection_of_one_object_s3_kills_commutator() {
    let s3 = alg(symmetric_group_3());
    // S3 has no one-object groupoid (composition would not be a homomorphism)
    assert!(one_object_groupoid(&s3, 0).is_err());
    let one = alg(crate::corpus::algebras::cyclic_group_multiplicative(1).unwrap());
    let bang = Homomorphism::from_fn(s3.clone(), one.clone(), |_| 0).unwrap();
    let unit = Homomorphism::from_fn(one, s3.clone(), |_| 0).unwrap();
    let g = reflexive_graph("S3", bang.clone(), bang, unit).unwrap();
    let r = graph_reflection(&g).unwrap();
    // D0 and D1 are both total; [∇, ∇] on S3 has the classes of A3
    assert_eq!(r.commutator.num_classes(), 2);
    let c2 = alg(crate::corpus::algebras::cyclic_group_multiplicative(2).unwrap());
    let target = one_object_groupoid(&c2, 0).unwrap();
    let n = graph_reflection_universal_check(&g, &r, &target, 1 << 20).unwrap();
    assert_eq!(n, 2);
}

#[test]
fn commutator_chain_on_nerve_and_coskeleton() {
    let x = coset_nerve(4, 2, 2);
    let c = commutator_chain_check(&x).unwrap();
    assert!(c.holds && c.commutator.is_discrete() && c.h1.is_discrete());
    let z2 = alg(cyclic_group(2).unwrap());
    let k = coskeleton(&square_graph(&z2), 3).unwrap();
    let c = commutator_chain_check(&k).unwrap();
    assert!(c.holds);
    assert_eq!(c.h1, c.d0_meet_d1);
}

#[test]
fn pi1_is_idempotent_up_to_isomorphism() {
    let z2 = alg(cyclic_group(2).unwrap());
    let c = Arc::new(coskeleton(&square_graph(&z2), 3).unwrap());
    let r = pi1(&c).unwrap();
    let again = pi1(&r.nerve.sim).unwrap();
    assert!(groupoid_isomorphism(&r.pi1, &again.pi1).unwrap().is_some());
}
