//! Finite *-semigroups, their orthogonality polars and the lattice-theoretic checks built on them.

pub mod analysis;
pub mod check;
pub mod decomposition;
pub mod equivalence;
pub mod error;
pub mod fuzz;
pub mod gallery;
pub mod semigroup;
pub mod structure;
pub mod subset;
pub mod polarity;
pub mod subsets;

pub use error::{Error, Result};
pub use semigroup::StarSemigroup;
pub use subset::ElementSubset;
