//! The Galois theory of the reflection onto groupoids: extension classes,
//! factorizations and homotopy relations.

mod classify;
mod factor;
mod homotopy;

pub use classify::{
    central_by_conditions, classify_extension, is_central_extension, is_trivial_extension,
    kernel_pair_projection_trivial, trivial_by_comparison, trivial_by_lattice, ExtensionReport,
    HornSquare, Witness,
};
pub use factor::{
    congruences_below, em_factorization, ml_factorization, part_kernels, pi1_inverts,
    pullback_along, quotient_factorization, sample_pullbacks, stabilizing_probe, Factorization,
    FactorizationMode, MlFactorization, ML_NODE_BUDGET,
};
pub use homotopy::{
    exactness_lemma_check, homotopy_relation, relative_homotopy_relation, RelativeHomotopy,
};

#[cfg(test)]
mod tests;
