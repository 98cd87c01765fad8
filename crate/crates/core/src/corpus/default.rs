//! The default corpus: base algebras, reflexive graphs, simplicial objects
//! and extensions, each described by a [`GeneratorSpec`].

use serde::{Deserialize, Serialize};

use super::generate::{generate, Artifact, GeneratorSpec, GraphSpec};
use crate::algebra::Alg;
use crate::error::{Result, SimalError};
use crate::simplicial::{Sim, SimplicialMorphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Desk,
    Deep,
}

impl std::str::FromStr for Profile {
    type Err = SimalError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "desk" => Ok(Profile::Desk),
            "deep" => Ok(Profile::Deep),
            other => Err(SimalError::InvalidParameters(format!(
                "unknown profile `{other}`"
            ))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub algebras: Vec<GeneratorSpec>,
    pub graphs: Vec<GeneratorSpec>,
    pub objects: Vec<GeneratorSpec>,
    pub extensions: Vec<GeneratorSpec>,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub algebras: Vec<Alg>,
    pub graphs: Vec<Sim>,
    pub objects: Vec<Sim>,
    pub extensions: Vec<SimplicialMorphism>,
}

fn b(s: GeneratorSpec) -> Box<GeneratorSpec> {
    Box::new(s)
}

fn z(n: usize) -> GeneratorSpec {
    GeneratorSpec::CyclicGroup { n }
}

fn chain(n: usize) -> GeneratorSpec {
    GeneratorSpec::HeytingFromPoset {
        n,
        order: (1..n).map(|i| (i - 1, i)).collect(),
    }
}

fn diamond() -> GeneratorSpec {
    GeneratorSpec::HeytingFromPoset {
        n: 4,
        order: vec![(0, 1), (0, 2), (1, 3), (2, 3)],
    }
}

fn square(a: GeneratorSpec) -> GraphSpec {
    GraphSpec::Square { algebra: b(a) }
}

fn random(a: GeneratorSpec, seed: u64) -> GraphSpec {
    GraphSpec::Random {
        algebra: b(a),
        seed,
    }
}

fn cosk(graph: GraphSpec, truncation: usize) -> GeneratorSpec {
    GeneratorSpec::CoskeletonOfGraph { graph, truncation }
}

fn one(a: GeneratorSpec, truncation: usize) -> GeneratorSpec {
    GeneratorSpec::OneObjectGroupoid {
        algebra: b(a),
        unit: 0,
        truncation,
    }
}

fn pair(a: GeneratorSpec, truncation: usize) -> GeneratorSpec {
    GeneratorSpec::PairGroupoid {
        algebra: b(a),
        truncation,
    }
}

fn discrete(a: GeneratorSpec, truncation: usize) -> GeneratorSpec {
    GeneratorSpec::DiscreteGroupoid {
        algebra: b(a),
        truncation,
    }
}

fn cong(a: GeneratorSpec, pairs: Vec<(usize, usize)>, truncation: usize) -> GeneratorSpec {
    GeneratorSpec::CongruenceNerve {
        algebra: b(a),
        pairs,
        truncation,
    }
}

fn dec(of: GeneratorSpec) -> GeneratorSpec {
    GeneratorSpec::DecalageOf { of: b(of) }
}

fn xmod_s3(truncation: usize) -> GeneratorSpec {
    GeneratorSpec::CrossedModuleGroupoid {
        group: b(GeneratorSpec::SymmetricGroup3),
        normal_generators: vec![1],
        truncation,
    }
}

fn counit(of: GeneratorSpec) -> GeneratorSpec {
    GeneratorSpec::DecalageCounit { of: b(of) }
}

fn quot(of: GeneratorSpec, pairs: Vec<(usize, usize, usize)>) -> GeneratorSpec {
    GeneratorSpec::QuotientExtension { of: b(of), pairs }
}

fn proj(left: GeneratorSpec, right: GeneratorSpec) -> GeneratorSpec {
    GeneratorSpec::ProductProjection {
        left: b(left),
        right: b(right),
    }
}

fn terminal(of: GeneratorSpec) -> GeneratorSpec {
    GeneratorSpec::ToTerminal { of: b(of) }
}

pub fn default_specs(profile: Profile) -> CorpusSpec {
    use GeneratorSpec::*;
    let mut algebras = vec![
        z(2),
        z(3),
        z(4),
        z(5),
        z(6),
        ZkModule { k: 2, d: 2 },
        ZkModule { k: 2, d: 3 },
        ZkModule { k: 3, d: 2 },
        SymmetricGroup3,
        DihedralGroup { m: 4 },
        chain(2),
        chain(3),
        chain(4),
        diamond(),
    ];
    let mut graphs = vec![
        Graph {
            graph: square(z(2)),
        },
        Graph {
            graph: square(z(3)),
        },
        Graph {
            graph: random(z(3), 1),
        },
        Graph {
            graph: random(z(4), 7),
        },
        Graph {
            graph: square(chain(2)),
        },
        Graph {
            graph: square(diamond()),
        },
        Graph {
            graph: random(SymmetricGroup3, 3),
        },
    ];
    let mut objects = vec![
        discrete(z(3), 3),
        pair(z(2), 3),
        cong(z(6), vec![(0, 3)], 3),
        cong(z(4), vec![(0, 2)], 3),
        one(z(2), 3),
        one(z(3), 3),
        xmod_s3(3),
        dec(one(z(2), 4)),
        dec(one(z(3), 3)),
        cosk(square(z(2)), 3),
        cosk(random(z(3), 1), 2),
        cosk(square(chain(2)), 3),
        cosk(square(diamond()), 2),
        dec(cosk(square(z(2)), 3)),
        ModuleSkeleton {
            graph: square(z(2)),
        },
        pair(SymmetricGroup3, 2),
    ];
    let mut extensions = vec![
        terminal(pair(z(2), 3)),
        terminal(cong(z(4), vec![(0, 2)], 2)),
        terminal(one(z(2), 3)),
        terminal(one(z(3), 2)),
        terminal(dec(one(z(2), 3))),
        terminal(cosk(square(z(2)), 2)),
        terminal(cosk(square(chain(2)), 2)),
        terminal(ModuleSkeleton {
            graph: square(z(2)),
        }),
        counit(one(z(2), 3)),
        counit(one(z(3), 3)),
        counit(pair(z(2), 3)),
        counit(cong(z(4), vec![(0, 2)], 3)),
        counit(cosk(square(z(2)), 3)),
        counit(cosk(square(chain(2)), 3)),
        counit(xmod_s3(3)),
        quot(pair(z(4), 3), vec![(0, 0, 2)]),
        quot(pair(z(2), 3), vec![(1, 0, 1)]),
        quot(one(z(4), 3), vec![(1, 0, 2)]),
        quot(cong(z(6), vec![(0, 3)], 3), vec![(0, 0, 2)]),
        quot(cosk(square(z(2)), 3), vec![(1, 0, 1)]),
        quot(cosk(square(z(2)), 3), vec![(0, 0, 1)]),
        quot(cosk(square(z(2)), 2), vec![(2, 0, 1)]),
        quot(cosk(random(z(3), 1), 2), vec![(1, 0, 1)]),
        quot(dec(one(z(3), 3)), vec![(0, 0, 1)]),
        quot(xmod_s3(2), vec![(0, 0, 1)]),
        quot(cosk(square(chain(2)), 2), vec![(1, 0, 1)]),
        quot(pair(chain(3), 2), vec![(0, 0, 1)]),
        quot(pair(diamond(), 2), vec![(0, 1, 2)]),
        quot(pair(z(3), 2), vec![]),
        proj(pair(z(2), 2), discrete(z(2), 2)),
        proj(cosk(square(z(2)), 2), one(z(2), 2)),
        proj(one(z(3), 2), pair(z(2), 2)),
        proj(dec(one(z(2), 3)), cosk(square(z(2)), 2)),
        proj(cosk(square(chain(2)), 2), discrete(chain(2), 2)),
    ];
    if profile == Profile::Deep {
        algebras.extend([
            z(7),
            z(8),
            DihedralGroup { m: 5 },
            DihedralGroup { m: 6 },
            ZkModule { k: 2, d: 4 },
        ]);
        graphs.extend([
            Graph {
                graph: random(z(5), 11),
            },
            Graph {
                graph: square(chain(3)),
            },
        ]);
        objects.extend([
            one(z(4), 3),
            cosk(square(z(3)), 3),
            cosk(random(z(4), 7), 2),
            cosk(square(chain(3)), 2),
            dec(cosk(square(chain(2)), 3)),
        ]);
        extensions.extend([
            counit(one(z(4), 3)),
            terminal(cosk(random(z(3), 1), 2)),
            quot(cosk(square(z(3)), 2), vec![(1, 0, 1)]),
            proj(one(z(4), 2), one(z(2), 2)),
        ]);
    }
    CorpusSpec {
        algebras,
        graphs,
        objects,
        extensions,
    }
}

pub fn build_corpus(spec: &CorpusSpec) -> Result<Corpus> {
    let mut corpus = Corpus {
        algebras: Vec::new(),
        graphs: Vec::new(),
        objects: Vec::new(),
        extensions: Vec::new(),
    };
    let wrong = |what: &str, a: &Artifact| {
        SimalError::InvalidParameters(format!("expected {what}, got a {}", a.kind()))
    };
    for s in &spec.algebras {
        match generate(s)? {
            Artifact::Algebra(a) => corpus.algebras.push(a),
            a => return Err(wrong("an algebra", &a)),
        }
    }
    for s in &spec.graphs {
        match generate(s)? {
            Artifact::Graph(g) => corpus.graphs.push(g),
            a => return Err(wrong("a graph", &a)),
        }
    }
    for s in &spec.objects {
        match generate(s)? {
            Artifact::Simplicial(x) => corpus.objects.push(x),
            a => return Err(wrong("a simplicial object", &a)),
        }
    }
    for s in &spec.extensions {
        match generate(s)? {
            Artifact::Morphism(f) => corpus.extensions.push(f),
            a => return Err(wrong("a morphism", &a)),
        }
    }
    Ok(corpus)
}

pub fn default_corpus(profile: Profile) -> Result<Corpus> {
    build_corpus(&default_specs(profile))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn desk_corpus_builds_within_bounds() {
        let t = std::time::Instant::now();
        let c = default_corpus(Profile::Desk).unwrap();
        assert!(c.extensions.len() >= 30);
        for x in &c.objects {
            assert!(x.truncation() <= 3);
            assert!(
                x.level_sizes().iter().all(|&s| s <= 4096),
                "{} {:?}",
                x.name(),
                x.level_sizes()
            );
            eprintln!("{:40} {:?}", x.name(), x.level_sizes());
        }
        for f in &c.extensions {
            assert!(f.is_levelwise_surjective());
            eprintln!(
                "{:40} {:?} -> {:?}",
                f.dom().name(),
                f.dom().level_sizes(),
                f.cod().level_sizes()
            );
        }
        eprintln!("built in {:?}", t.elapsed());
    }
}
