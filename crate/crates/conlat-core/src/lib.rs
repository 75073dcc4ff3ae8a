//! Computations on finite algebras given as operation tables: congruence
//! lattices, the modular commutator and centers, Gumm difference-term
//! constructions, and essential-extension / subdirect-decomposition
//! structure.
//!
//! Everything in this crate is a pure function on immutable values; the
//! crate is `no_std` (with `alloc`) and all results are deterministic.
//! Input/output, the file format, and the verification-suite runner live in
//! the companion CLI crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod algebra;
pub mod check;
pub mod commutator;
pub mod congruence;
pub mod corpus;
pub mod decompose;
pub mod error;
pub mod gumm;
pub mod oracle;
pub mod partition;
pub mod term;

/// Resource limits threaded through the operations that can build large
/// objects. The universe limit bounds any algebra constructed or scanned;
/// the lattice cap bounds congruence-lattice element counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_universe: usize,
    pub max_lattice: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_universe: 1024,
            max_lattice: 4096,
        }
    }
}

pub use algebra::{
    make_product, make_quotient, subalgebra_generated, Embedding, FiniteAlgebra, Homomorphism,
    OperationTable, ProductAlgebra,
};
pub use congruence::{
    congruence_closure, is_congruence, join, principal_congruence, restrict, CongruenceLattice,
};
pub use error::{Error, Result};
pub use partition::{compose, Partition, Relation};
pub use term::{eval_term, Term};
