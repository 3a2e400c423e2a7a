//! Schubert codes C_α(ℓ,m) over finite fields.
//!
//! The crate builds the codes explicitly (cell-by-cell point enumeration and
//! Plücker coordinates), computes their length, dimension, and distance
//! bounds through several independent closed forms, and brute-forces minimum
//! distance and higher weights so the formulas can be checked against each
//! other and against the geometry.

pub mod cli;
pub mod code;
pub mod combinatorics;
pub mod error;
pub mod field;
pub mod formulas;
pub mod geometry;
pub mod index_tuple;
pub mod par;

pub use error::{Error, Result};
pub use field::{make_field, Elem, FieldSpec};
pub use index_tuple::{enumerate_all, BlockStructure, IndexTuple};
pub use par::Execution;

/// Hard caps on exhaustive enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of Grassmannian points enumerated at once.
    pub points: u64,
    /// Maximum number of hyperplanes, codimension-r subspaces, or messages
    /// visited by a single search.
    pub subspaces: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            points: 10_000_000,
            subspaces: 10_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: Budget,
    pub execution: Execution,
}

impl SearchOptions {
    pub fn sequential() -> Self {
        Self {
            execution: Execution::Sequential,
            ..Self::default()
        }
    }
}
