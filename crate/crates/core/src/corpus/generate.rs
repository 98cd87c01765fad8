//! Declarative, seeded generation of corpus artifacts.

use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::algebras::{
    cyclic_group, dihedral_group, group_from_mul, heyting_from_poset, symmetric_group_3,
    terminal_like, zk_module,
};
use super::groupoids::{
    congruence_groupoid, crossed_module_groupoid, one_object_groupoid, reflexive_graph,
};
use crate::algebra::{all_homomorphisms, product, Alg, Congruence, Homomorphism};
use crate::error::{Result, SimalError};
use crate::reflection::InternalGroupoid;
use crate::simplicial::{
    constant, coskeleton, decalage, levelwise_product, nerve, quotient, sk1_module_variety, Sim,
    SimplicialCongruence, SimplicialMorphism,
};

/// Largest carrier accepted for generated base algebras.
pub const MAX_BASE_CARRIER: usize = 16;

/// A reflexive graph over a base algebra `A`, always with `X₁ = A × A`,
/// `d₁ = π₁` and `s₀` the diagonal or `x ↦ (x, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum GraphSpec {
    /// `d₀ = d₁ = π₁`; the section is `x ↦ (x, 0)` when the signature
    /// has `zero`, else the diagonal.
    Square { algebra: Box<GeneratorSpec> },
    /// `d₀` drawn with the seed among the homomorphisms `A × A → A`
    /// fixing the diagonal; the section is the diagonal.
    Random {
        algebra: Box<GeneratorSpec>,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    CyclicGroup {
        n: usize,
    },
    DihedralGroup {
        m: usize,
    },
    SymmetricGroup3,
    ZkModule {
        k: usize,
        d: usize,
    },
    HeytingFromPoset {
        n: usize,
        order: Vec<(usize, usize)>,
    },
    /// Nerve of the congruence generated by `pairs`.
    CongruenceNerve {
        algebra: Box<GeneratorSpec>,
        pairs: Vec<(usize, usize)>,
        truncation: usize,
    },
    PairGroupoid {
        algebra: Box<GeneratorSpec>,
        truncation: usize,
    },
    DiscreteGroupoid {
        algebra: Box<GeneratorSpec>,
        truncation: usize,
    },
    /// Nerve of the one-object groupoid at the element `unit`.
    OneObjectGroupoid {
        algebra: Box<GeneratorSpec>,
        unit: usize,
        truncation: usize,
    },
    /// Nerve of `N ⋊ G ⇉ G` for the normal subgroup `N` generated by
    /// `normal_generators`, with conjugation action and inclusion boundary.
    CrossedModuleGroupoid {
        group: Box<GeneratorSpec>,
        normal_generators: Vec<usize>,
        truncation: usize,
    },
    CoskeletonOfGraph {
        graph: GraphSpec,
        truncation: usize,
    },
    Graph {
        graph: GraphSpec,
    },
    /// The décalage of a simplicial object (truncation drops by one).
    DecalageOf {
        of: Box<GeneratorSpec>,
    },
    /// The counit `Dec(X) → X` restricted to the truncation of `Dec(X)`.
    DecalageCounit {
        of: Box<GeneratorSpec>,
    },
    /// The projection `X → X/θ` for the simplicial congruence generated by
    /// the pairs `(level, a, b)`.
    QuotientExtension {
        of: Box<GeneratorSpec>,
        pairs: Vec<(usize, usize, usize)>,
    },
    /// The 1-skeleton of a graph over an abelian-group signature.
    ModuleSkeleton {
        graph: GraphSpec,
    },
    /// The first projection `X × Y → X`.
    ProductProjection {
        left: Box<GeneratorSpec>,
        right: Box<GeneratorSpec>,
    },
    /// The unique map to the one-element constant object.
    ToTerminal {
        of: Box<GeneratorSpec>,
    },
}

#[derive(Clone, Debug)]
pub enum Artifact {
    Algebra(Alg),
    /// A 1-truncated simplicial object.
    Graph(Sim),
    Simplicial(Sim),
    Morphism(SimplicialMorphism),
}

impl Artifact {
    pub fn kind(&self) -> &'static str {
        match self {
            Artifact::Algebra(_) => "algebra",
            Artifact::Graph(_) => "graph",
            Artifact::Simplicial(_) => "simplicial",
            Artifact::Morphism(_) => "morphism",
        }
    }
}

fn expect_algebra(spec: &GeneratorSpec) -> Result<Alg> {
    match generate(spec)? {
        Artifact::Algebra(a) => Ok(a),
        other => Err(SimalError::InvalidParameters(format!(
            "expected an algebra, got a {}",
            other.kind()
        ))),
    }
}

fn expect_simplicial(spec: &GeneratorSpec) -> Result<Sim> {
    match generate(spec)? {
        Artifact::Simplicial(x) => Ok(x),
        other => Err(SimalError::InvalidParameters(format!(
            "expected a simplicial object, got a {}",
            other.kind()
        ))),
    }
}

fn groupoid_nerve(g: &InternalGroupoid, truncation: usize) -> Result<Artifact> {
    if truncation < 1 {
        return Err(SimalError::InvalidParameters(
            "truncation must be at least 1".into(),
        ));
    }
    Ok(Artifact::Simplicial(nerve(g, truncation)?.sim))
}

fn base(a: crate::algebra::FiniteAlgebra) -> Result<Artifact> {
    if a.size() > MAX_BASE_CARRIER {
        return Err(SimalError::BudgetExceeded(format!(
            "base carrier `{}` has {} elements, above {MAX_BASE_CARRIER}",
            a.name(),
            a.size()
        )));
    }
    Ok(Artifact::Algebra(Arc::new(a)))
}

pub fn generate(spec: &GeneratorSpec) -> Result<Artifact> {
    use GeneratorSpec::*;
    match spec {
        CyclicGroup { n } => base(cyclic_group(*n)?),
        DihedralGroup { m } => base(dihedral_group(*m)?),
        SymmetricGroup3 => base(symmetric_group_3()),
        ZkModule { k, d } => base(zk_module(*k, *d)?),
        HeytingFromPoset { n, order } => base(heyting_from_poset(&format!("H{n}"), *n, order)?),
        CongruenceNerve {
            algebra,
            pairs,
            truncation,
        } => {
            let a = expect_algebra(algebra)?;
            for &(x, y) in pairs {
                if x >= a.size() || y >= a.size() {
                    return Err(SimalError::InvalidParameters(format!(
                        "pair ({x}, {y}) outside `{}`",
                        a.name()
                    )));
                }
            }
            let theta = Congruence::discrete(&a).with_pairs(pairs.iter().copied());
            groupoid_nerve(&congruence_groupoid(&theta)?, *truncation)
        }
        PairGroupoid {
            algebra,
            truncation,
        } => groupoid_nerve(
            &congruence_groupoid(&Congruence::total(&expect_algebra(algebra)?))?,
            *truncation,
        ),
        DiscreteGroupoid {
            algebra,
            truncation,
        } => groupoid_nerve(
            &congruence_groupoid(&Congruence::discrete(&expect_algebra(algebra)?))?,
            *truncation,
        ),
        OneObjectGroupoid {
            algebra,
            unit,
            truncation,
        } => groupoid_nerve(
            &one_object_groupoid(&expect_algebra(algebra)?, *unit)?,
            *truncation,
        ),
        CrossedModuleGroupoid {
            group,
            normal_generators,
            truncation,
        } => {
            let g = expect_algebra(group)?;
            groupoid_nerve(
                &normal_subgroup_groupoid(&g, normal_generators)?,
                *truncation,
            )
        }
        Graph { graph } => Ok(Artifact::Graph(build_graph(graph)?)),
        CoskeletonOfGraph { graph, truncation } => {
            let g = build_graph(graph)?;
            Ok(Artifact::Simplicial(Arc::new(coskeleton(&g, *truncation)?)))
        }
        DecalageOf { of } => Ok(Artifact::Simplicial(decalage(&expect_simplicial(of)?)?.0)),
        DecalageCounit { of } => Ok(Artifact::Morphism(decalage(&expect_simplicial(of)?)?.1)),
        QuotientExtension { of, pairs } => {
            let x = expect_simplicial(of)?;
            for &(n, a, b) in pairs {
                if n > x.truncation() || a >= x.level(n).size() || b >= x.level(n).size() {
                    return Err(SimalError::InvalidParameters(format!(
                        "pair ({n}, {a}, {b}) outside `{}`",
                        x.name()
                    )));
                }
            }
            let theta = SimplicialCongruence::discrete(&x).with_pairs(&x, pairs);
            Ok(Artifact::Morphism(quotient(&x, &theta)?.1))
        }
        ModuleSkeleton { graph } => Ok(Artifact::Simplicial(Arc::new(sk1_module_variety(
            &*build_graph(graph)?,
        )?))),
        ProductProjection { left, right } => {
            let (x, y) = (expect_simplicial(left)?, expect_simplicial(right)?);
            Ok(Artifact::Morphism(levelwise_product(&x, &y)?.p1))
        }
        ToTerminal { of } => Ok(Artifact::Morphism(to_terminal(&expect_simplicial(of)?)?)),
    }
}

/// The unique morphism to the constant one-element object.
pub fn to_terminal(x: &Sim) -> Result<SimplicialMorphism> {
    let one = terminal_like(x.level(0));
    let t: Sim = Arc::new(constant(&one, x.truncation())?);
    let comps = (0..=x.truncation())
        .map(|n| Homomorphism::from_fn(x.level(n).clone(), one.clone(), |_| 0))
        .collect::<Result<Vec<_>>>()?;
    SimplicialMorphism::new(x.clone(), t, comps)
}

fn build_graph(spec: &GraphSpec) -> Result<Sim> {
    let (algebra, seed) = match spec {
        GraphSpec::Square { algebra } => (algebra, None),
        GraphSpec::Random { algebra, seed } => (algebra, Some(*seed)),
    };
    let a = expect_algebra(algebra)?;
    let p = product(&[a.clone(), a.clone()])?;
    let x1 = p.alg().clone();
    let d1 = p.projection(0).clone();
    let pair = |x: usize, y: usize| p.index_of(&[x as u32, y as u32]).expect("in product");
    match seed {
        None => {
            let zero = a.signature().index_of("zero").map(|z| a.apply(z, &[]));
            let s0 = Homomorphism::from_fn(a.clone(), x1, |x| pair(x, zero.unwrap_or(x)))?;
            reflexive_graph(format!("Sq({})", a.name()), d1.clone(), d1, s0)
        }
        Some(seed) => {
            let s0 = Homomorphism::from_fn(a.clone(), x1.clone(), |x| pair(x, x))?;
            let candidates: Vec<Homomorphism> = all_homomorphisms(&x1, &a, 1 << 20)?
                .into_iter()
                .filter(|h| (0..a.size()).all(|x| h.apply(pair(x, x)) == x))
                .collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d0 = candidates
                .choose(&mut rng)
                .expect("the projections qualify")
                .clone();
            reflexive_graph(format!("Rnd{seed}({})", a.name()), d0, d1, s0)
        }
    }
}

/// `N ⋊ G ⇉ G` for the normal subgroup generated by `gens`: conjugation
/// action, inclusion as boundary.
pub fn normal_subgroup_groupoid(g: &Alg, gens: &[usize]) -> Result<InternalGroupoid> {
    let mul = g.signature().index_of("mul").ok_or_else(|| {
        SimalError::InvalidParameters("crossed modules need the group signature".into())
    })?;
    let inv = g
        .signature()
        .index_of("inv")
        .expect("group signature has inv");
    let m = |a: usize, b: usize| g.apply(mul, &[a, b]);
    let i = |a: usize| g.apply(inv, &[a]);
    let mut seeds: Vec<usize> = gens.to_vec();
    for &x in gens {
        for y in 0..g.size() {
            seeds.push(m(m(y, x), i(y)));
        }
    }
    let n = g.generated(&seeds);
    if n.iter()
        .any(|&x| (0..g.size()).any(|y| n.binary_search(&m(m(y, x), i(y))).is_err()))
    {
        return Err(SimalError::InvalidParameters(
            "generated subgroup is not normal".into(),
        ));
    }
    let t = n.len();
    let unit = n
        .iter()
        .position(|&x| m(x, x) == x)
        .expect("a subgroup contains the identity");
    let idx = |x: usize| n.binary_search(&x).expect("in N");
    let x1 = group_from_mul(&format!("{}x|{}", t, g.name()), t * g.size(), |a, b| {
        let (t1, g1) = (n[a % t], a / t);
        let (t2, g2) = (n[b % t], b / t);
        idx(m(t1, m(m(g1, t2), i(g1)))) + t * m(g1, g2)
    })?;
    crossed_module_groupoid(&Arc::new(x1), g, t, unit, &n)
}

/// The complete congruence lattice of an algebra with at most 16 elements,
/// from principal congruences closed under joins.
pub fn enumerate_congruences(a: &Alg) -> Result<Vec<Congruence>> {
    if a.size() > MAX_BASE_CARRIER {
        return Err(SimalError::BudgetExceeded(format!(
            "congruence enumeration on {} elements (limit {MAX_BASE_CARRIER})",
            a.size()
        )));
    }
    let mut principal: Vec<Congruence> = Vec::new();
    for x in 0..a.size() {
        for y in x + 1..a.size() {
            let c = Congruence::principal(a, x, y);
            if !principal.contains(&c) {
                principal.push(c);
            }
        }
    }
    let mut all = vec![Congruence::discrete(a)];
    let mut i = 0;
    while i < all.len() {
        for p in &principal {
            let j = all[i].join(p)?;
            if !all.contains(&j) {
                all.push(j);
            }
        }
        i += 1;
    }
    all.sort_by_key(|c| (std::cmp::Reverse(c.num_classes()), c.blocks().to_vec()));
    Ok(all)
}
