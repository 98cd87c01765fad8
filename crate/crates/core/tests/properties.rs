//! Invariants checked on randomly chosen inputs.

use std::path::Path;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use simal_core::algebra::{Alg, Congruence};
use simal_core::corpus::algebras::{
    cyclic_group, dihedral_group, heyting_chain, heyting_diamond, symmetric_group_3, zk_module,
};
use simal_core::corpus::{default_specs, generate, Artifact, GeneratorSpec, GraphSpec, Profile};
use simal_core::galois::{classify_extension, homotopy_relation};
use simal_core::io::{parse_document, to_pretty, Document};
use simal_core::reflection::{
    commutator_chain_check, graph_reflection, h1, h1_candidates, is_internal_groupoid, pi1,
};
use simal_core::simplicial::{
    coskeleton, face_squares, kan_check, nerve, quotient, Sim, SimplicialCongruence,
};

fn algebras() -> &'static Vec<Alg> {
    static CELL: OnceLock<Vec<Alg>> = OnceLock::new();
    CELL.get_or_init(|| {
        vec![
            Arc::new(cyclic_group(6).unwrap()),
            Arc::new(cyclic_group(8).unwrap()),
            Arc::new(zk_module(2, 3).unwrap()),
            Arc::new(zk_module(3, 2).unwrap()),
            Arc::new(symmetric_group_3()),
            Arc::new(dihedral_group(4).unwrap()),
            Arc::new(heyting_chain(4).unwrap()),
            Arc::new(heyting_diamond()),
        ]
    })
}

/// Small simplicial objects from the desk corpus specs.
fn objects() -> &'static Vec<Sim> {
    static CELL: OnceLock<Vec<Sim>> = OnceLock::new();
    CELL.get_or_init(|| {
        default_specs(Profile::Desk)
            .objects
            .iter()
            .filter_map(|s| match generate(s).unwrap() {
                Artifact::Simplicial(x) if x.level_sizes().iter().all(|&n| n <= 256) => Some(x),
                _ => None,
            })
            .collect()
    })
}

/// Reflexive-transitive closure of `R ∪ S` as a matrix, by repeated
/// squaring until stable.
fn closure_oracle(r: &Congruence, s: &Congruence) -> Vec<Vec<bool>> {
    let n = r.blocks().len();
    let mut m: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| r.related(a, b) || s.related(a, b)).collect())
        .collect();
    loop {
        let mut next = m.clone();
        for a in 0..n {
            for b in 0..n {
                if m[a][b] {
                    for c in 0..n {
                        next[a][c] |= m[b][c];
                    }
                }
            }
        }
        if next == m {
            return m;
        }
        m = next;
    }
}

fn matrix(c: &Congruence) -> Vec<Vec<bool>> {
    let n = c.blocks().len();
    (0..n)
        .map(|a| (0..n).map(|b| c.related(a, b)).collect())
        .collect()
}

fn congruence(a: &Alg, pairs: &[(usize, usize)]) -> Congruence {
    let n = a.size();
    Congruence::discrete(a).with_pairs(pairs.iter().map(|&(x, y)| (x % n, y % n)))
}

type Pairs = Vec<(usize, usize)>;

fn three_congruences() -> impl Strategy<Value = (usize, Pairs, Pairs, Pairs)> {
    let pairs = || prop::collection::vec((0usize..16, 0usize..16), 0..3);
    (0..algebras().len(), pairs(), pairs(), pairs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn join_matches_closure_oracle((ai, p, q, _) in three_congruences()) {
        let a = &algebras()[ai];
        let (r, s) = (congruence(a, &p), congruence(a, &q));
        let j = r.join(&s).unwrap();
        prop_assert_eq!(matrix(&j), closure_oracle(&r, &s));
        prop_assert_eq!(&j, &s.join(&r).unwrap());
    }

    #[test]
    fn lattice_laws((ai, p, q, u) in three_congruences()) {
        let a = &algebras()[ai];
        let (r, s, t0) = (congruence(a, &p), congruence(a, &q), congruence(a, &u));
        // Absorption.
        prop_assert_eq!(&r.join(&r.meet(&s).unwrap()).unwrap(), &r);
        prop_assert_eq!(&r.meet(&r.join(&s).unwrap()).unwrap(), &r);
        // Modular law with R <= T, T = R ∨ T0.
        let t = r.join(&t0).unwrap();
        let lhs = r.join(&s.meet(&t).unwrap()).unwrap();
        let rhs = r.join(&s).unwrap().meet(&t).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quotient_projection_has_the_congruence_as_kernel((ai, p, _, _) in three_congruences()) {
        let a = &algebras()[ai];
        let r = congruence(a, &p);
        let (q, proj) = r.quotient().unwrap();
        prop_assert_eq!(q.size(), r.num_classes());
        prop_assert_eq!(&Congruence::kernel_pair(&proj), &r);
        // The image of R along its own projection is discrete.
        prop_assert!(r.image(&proj).unwrap().is_discrete());
    }

    #[test]
    fn quotients_of_corpus_objects_keep_every_invariant(
        oi in 0usize..64,
        level in 0usize..4,
        a in 0usize..4096,
        b in 0usize..4096,
    ) {
        let objs = objects();
        let x = &objs[oi % objs.len()];
        let level = level % (x.truncation() + 1);
        let n = x.level(level).size();
        let theta = SimplicialCongruence::principal(x, level, a % n, b % n);
        let (q, f) = quotient(x, &theta).unwrap();
        prop_assert!(f.is_levelwise_surjective());

        // Simplicial structure and exactness-type properties of the quotient.
        for sq in face_squares(&q).unwrap() {
            prop_assert!(sq.report.holds());
        }
        prop_assert!(kan_check(&q).unwrap().all_surjective());

        if q.truncation() >= 2 {
            let [c0, c1, c2] = h1_candidates(&q).unwrap();
            prop_assert!(c0 == c1 && c1 == c2);
            prop_assert_eq!(homotopy_relation(&q).unwrap(), h1(&q).unwrap());
            let r = pi1(&q).unwrap();
            prop_assert!(is_internal_groupoid(&r.nerve.sim).unwrap().holds);
            // Quotients of groupoid nerves are groupoid nerves.
            if is_internal_groupoid(x).unwrap().holds {
                prop_assert!(is_internal_groupoid(&q).unwrap().holds);
            }
            // Classification builds the kernel-pair object, quadratic in level size.
            if x.level_sizes().iter().all(|&s| s <= 64) {
                let report = classify_extension(&f).unwrap();
                prop_assert_eq!(report.central_by_conditions, report.central_by_definition);
                prop_assert_eq!(report.trivial_by_lattice, report.trivial_by_comparison);
                prop_assert!(!report.trivial || report.central);
                prop_assert!(!report.central || report.normal);
            }
        }

        // JSON round trip is exact.
        let text = to_pretty(&Document::Simplicial(q.clone()).to_json());
        let back = parse_document(&serde_json::from_str(&text).unwrap(), Path::new("."), "q").unwrap();
        prop_assert_eq!(to_pretty(&back.to_json()), text);
    }

    #[test]
    fn random_graphs_reflect_to_groupoids(seed in any::<u64>(), which in 0usize..3) {
        let algebra = match which {
            0 => GeneratorSpec::CyclicGroup { n: 3 },
            1 => GeneratorSpec::CyclicGroup { n: 4 },
            _ => GeneratorSpec::HeytingFromPoset { n: 3, order: vec![(0, 1), (1, 2)] },
        };
        let Artifact::Graph(g) = generate(&GeneratorSpec::Graph {
            graph: GraphSpec::Random { algebra: Box::new(algebra), seed },
        }).unwrap() else {
            panic!("graph spec did not produce a graph")
        };
        let r = graph_reflection(&g).unwrap();
        prop_assert!(is_internal_groupoid(&nerve(&r.groupoid, 2).unwrap().sim).unwrap().holds);
        let c = Arc::new(coskeleton(&g, 2).unwrap());
        let chain = commutator_chain_check(&c).unwrap();
        prop_assert!(chain.holds);
        // Coskeleta: the right-hand inequality is tight.
        prop_assert_eq!(&chain.h1, &chain.d0_meet_d1);
        prop_assert!(r.commutator.le(&chain.d0_meet_d1));
    }
}
