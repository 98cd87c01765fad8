//! Deterministic generators for algebras, graphs, groupoids, simplicial
//! objects and extensions, and the default corpus used by the suites.

pub mod algebras;
pub mod default;
pub mod generate;
pub mod groupoids;

pub use default::{build_corpus, default_corpus, default_specs, Corpus, CorpusSpec, Profile};
pub use generate::{
    enumerate_congruences, generate, to_terminal, Artifact, GeneratorSpec, GraphSpec,
};
