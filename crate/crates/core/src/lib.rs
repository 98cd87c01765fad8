//! Simplicial algebra over finite Mal'tsev algebras: congruence lattices,
//! simplicial kernels and horns, the groupoid reflection of a simplicial
//! object, and the classification of its extensions.

pub mod algebra;
pub mod budget;
pub mod corpus;
pub mod error;
pub mod galois;
pub mod io;
pub mod reflection;
pub mod simplicial;
pub mod suite;

pub use error::{ErrorKind, Result, SimalError};
