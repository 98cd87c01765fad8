//! Finite algebras, homomorphisms, congruences and finite limits.

pub mod commutator;
pub mod congruence;
pub mod finite;
pub mod hom;
pub mod limit;
pub mod search;
pub mod signature;
pub mod square;
pub mod term;

pub use commutator::tc_commutator;
pub use congruence::Congruence;
pub use finite::{for_each_tuple, Alg, FiniteAlgebra};
pub use hom::{subalgebra, Homomorphism};
pub use limit::{finite_limit, product, pullback, pullback_size, FiniteDiagram, Limit};
pub use search::{all_homomorphisms, extend_from_generators};
pub use signature::{OpSymbol, Signature};
pub use square::{is_double_extension, DoubleExtensionReport};
pub use term::Term;
