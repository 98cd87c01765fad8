//! Internal groupoids and the reflection of simplicial algebras onto them.

mod check;
mod graph;
mod groupoid;
mod reflect;

pub use check::{
    groupoid_isomorphism, is_internal_groupoid, preserves_structure, GroupoidCheck, GroupoidLevel,
};
pub use graph::{
    commutator_chain_check, graph_reflection, graph_reflection_universal_check, CommutatorChain,
    GraphReflection,
};
pub use groupoid::InternalGroupoid;
pub use reflect::{
    factor_through_unit, h1, h1_candidates, hn, morphisms_into_groupoid, pi1, reflect_morphism,
    spine_edge, universal_property_check, universal_property_with, Factorization, ReflectionResult,
};

#[cfg(test)]
mod tests;
