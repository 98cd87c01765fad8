use std::path::Path;
use std::sync::Arc;

use simal_core::corpus::algebras::{cyclic_group, heyting_chain, symmetric_group_3, zk_module};
use simal_core::corpus::{
    default_corpus, default_specs, enumerate_congruences, generate, Artifact, GeneratorSpec,
    GraphSpec, Profile,
};
use simal_core::io::{parse_document, to_pretty, Document};
use simal_core::reflection::is_internal_groupoid;
use simal_core::SimalError;

fn simplicial(spec: &GeneratorSpec) -> simal_core::simplicial::Sim {
    match generate(spec).unwrap() {
        Artifact::Simplicial(x) => x,
        a => panic!("expected a simplicial object, got a {}", a.kind()),
    }
}

#[test]
fn cyclic_group_four_uses_the_group_term() {
    let Artifact::Algebra(z4) = generate(&GeneratorSpec::CyclicGroup { n: 4 }).unwrap() else {
        panic!()
    };
    assert_eq!(z4.size(), 4);
    for x in 0..4 {
        for y in 0..4 {
            for z in 0..4 {
                assert_eq!(z4.maltsev(x, y, z), (x + 4 - y + z) % 4);
            }
        }
    }
}

#[test]
fn congruence_nerve_sizes_double_per_level() {
    let x = simplicial(&GeneratorSpec::CongruenceNerve {
        algebra: Box::new(GeneratorSpec::CyclicGroup { n: 6 }),
        pairs: vec![(0, 3)],
        truncation: 3,
    });
    assert_eq!(x.level_sizes(), vec![6, 12, 24, 48]);
    // The subgroup {0, 2, 4} has classes of size three instead.
    let y = simplicial(&GeneratorSpec::CongruenceNerve {
        algebra: Box::new(GeneratorSpec::CyclicGroup { n: 6 }),
        pairs: vec![(0, 2)],
        truncation: 3,
    });
    assert_eq!(y.level_sizes(), vec![6, 18, 54, 162]);
}

#[test]
fn two_chain_heyting_algebra_validates() {
    let Artifact::Algebra(h) = generate(&GeneratorSpec::HeytingFromPoset {
        n: 2,
        order: vec![(0, 1)],
    })
    .unwrap() else {
        panic!()
    };
    assert_eq!(h.size(), 2);
    h.validate_maltsev().unwrap();
}

#[test]
fn congruence_lattice_sizes() {
    assert_eq!(
        enumerate_congruences(&Arc::new(cyclic_group(4).unwrap()))
            .unwrap()
            .len(),
        3
    );
    assert_eq!(
        enumerate_congruences(&Arc::new(zk_module(2, 2).unwrap()))
            .unwrap()
            .len(),
        5
    );
    // Simple algebras: only the two trivial congruences.
    for a in [
        cyclic_group(5).unwrap(),
        cyclic_group(2).unwrap(),
        heyting_chain(2).unwrap(),
    ] {
        let cons = enumerate_congruences(&Arc::new(a)).unwrap();
        assert_eq!(cons.len(), 2);
        assert!(cons.iter().any(|c| c.is_discrete()) && cons.iter().any(|c| c.is_total()));
    }
    // S3: Δ, A3 cosets, ∇.
    assert_eq!(
        enumerate_congruences(&Arc::new(symmetric_group_3()))
            .unwrap()
            .len(),
        3
    );
}

#[test]
fn generation_is_deterministic_under_a_fixed_seed() {
    let spec = |seed| GeneratorSpec::CoskeletonOfGraph {
        graph: GraphSpec::Random {
            algebra: Box::new(GeneratorSpec::CyclicGroup { n: 4 }),
            seed,
        },
        truncation: 2,
    };
    let render = |s: &GeneratorSpec| to_pretty(&Document::from(generate(s).unwrap()).to_json());
    assert_eq!(render(&spec(11)), render(&spec(11)));
    let distinct: std::collections::BTreeSet<String> = (0..8).map(|s| render(&spec(s))).collect();
    assert!(distinct.len() > 1, "seeds never change the random graph");
}

#[test]
fn generated_artifacts_survive_validation_round_trip() {
    let specs = default_specs(Profile::Desk);
    for s in specs
        .algebras
        .iter()
        .chain(&specs.graphs)
        .chain(&specs.objects)
        .chain(&specs.extensions)
    {
        let doc = Document::from(generate(s).unwrap());
        let text = to_pretty(&doc.to_json());
        let back =
            parse_document(&serde_json::from_str(&text).unwrap(), Path::new("."), "x").unwrap();
        assert_eq!(to_pretty(&back.to_json()), text, "{s:?}");
    }
}

#[test]
fn spec_json_form_is_stable() {
    let spec = GeneratorSpec::QuotientExtension {
        of: Box::new(GeneratorSpec::PairGroupoid {
            algebra: Box::new(GeneratorSpec::CyclicGroup { n: 4 }),
            truncation: 3,
        }),
        pairs: vec![(0, 0, 2)],
    };
    let v = serde_json::to_value(&spec).unwrap();
    assert_eq!(v["kind"], "quotient_extension");
    assert_eq!(v["of"]["kind"], "pair_groupoid");
    let back: GeneratorSpec = serde_json::from_value(v).unwrap();
    assert_eq!(back, spec);
}

#[test]
fn oversized_base_carriers_are_rejected() {
    let err = generate(&GeneratorSpec::CyclicGroup { n: 17 }).unwrap_err();
    assert!(
        matches!(
            err,
            SimalError::InvalidParameters(_) | SimalError::BudgetExceeded(_)
        ),
        "{err}"
    );
}

#[test]
fn crossed_module_groupoid_validates() {
    let x = simplicial(&GeneratorSpec::CrossedModuleGroupoid {
        group: Box::new(GeneratorSpec::SymmetricGroup3),
        normal_generators: vec![1],
        truncation: 3,
    });
    assert_eq!(x.level_sizes(), vec![6, 18, 54, 162]);
    assert!(is_internal_groupoid(&x).unwrap().holds);
}

#[test]
fn desk_corpus_meets_its_size_contract() {
    let c = default_corpus(Profile::Desk).unwrap();
    assert!(c.extensions.len() >= 30);
    assert!(c.algebras.iter().all(|a| a.size() <= 16));
    for x in &c.objects {
        assert!(x.truncation() <= 3);
        assert!(x.level_sizes().iter().all(|&s| s <= 4096), "{}", x.name());
    }
    assert!(c.extensions.iter().all(|f| f.is_levelwise_surjective()));
}
