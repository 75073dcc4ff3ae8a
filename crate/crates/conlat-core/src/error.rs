//! Error type shared by every operation in the crate.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::partition::Partition;

/// Everything that can go wrong while working with finite algebras.
///
/// `Falsified` is special: it means a postcondition that is a theorem of the
/// ambient theory failed to hold, so either the input is outside the theory's
/// hypotheses or the library itself is wrong. Callers should surface it
/// verbatim rather than recover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two algebras that must share a signature do not. Carries the name of
    /// the first offending operation (or a description when arity lists
    /// differ in length).
    SignatureMismatch(String),
    /// A partition was used where a congruence is required. Carries a
    /// violating witness: operation name, argument position, fixed constants,
    /// and the pair whose images split.
    NotACongruence {
        op: String,
        position: usize,
        constants: Vec<usize>,
        pair: (usize, usize),
    },
    /// Partition/universe sizes disagree.
    SizeMismatch { expected: usize, found: usize },
    /// Generating a subalgebra from an empty seed in a signature with no
    /// nullary operations: the empty subuniverse is not representable.
    EmptySubuniverse,
    /// A term mentions an operation the target signature does not have.
    UnknownOperation(String),
    /// A term applies an operation to the wrong number of arguments.
    ArityMismatch {
        op: String,
        expected: usize,
        found: usize,
    },
    /// An element index is outside the universe.
    ElementOutOfRange { element: usize, size: usize },
    /// A map is not a homomorphism; carries the violating operation and
    /// argument tuple.
    NotAHomomorphism { op: String, args: Vec<usize> },
    /// A map that must be injective is not.
    NotInjective { a: usize, b: usize },
    /// Commutator machinery was invoked on an algebra whose congruence
    /// lattice is not modular. Carries a pentagon witness (five congruences
    /// forming an N5 sublattice).
    NonModular(Vec<Partition>),
    /// An operation-specific precondition failed.
    Precondition(String),
    /// A proved statement failed on concrete data: either the hypotheses do
    /// not hold for this input or the implementation is wrong.
    Falsified(String),
    /// A computation would exceed the configured universe-size limit.
    UniverseLimit { required: usize, limit: usize },
    /// A congruence lattice grew past the configured element cap.
    LatticeLimit { cap: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SignatureMismatch(op) => write!(f, "signature mismatch at operation `{op}`"),
            Error::NotACongruence {
                op,
                position,
                constants,
                pair,
            } => write!(
                f,
                "not a congruence: operation `{op}` at position {position} with constants {constants:?} splits pair ({}, {})",
                pair.0, pair.1
            ),
            Error::SizeMismatch { expected, found } => {
                write!(f, "size mismatch: expected {expected}, found {found}")
            }
            Error::EmptySubuniverse => {
                write!(f, "empty seed and no nullary operations: empty subuniverse")
            }
            Error::UnknownOperation(op) => write!(f, "unknown operation `{op}`"),
            Error::ArityMismatch {
                op,
                expected,
                found,
            } => write!(f, "operation `{op}` expects {expected} arguments, got {found}"),
            Error::ElementOutOfRange { element, size } => {
                write!(f, "element {element} out of range for universe of size {size}")
            }
            Error::NotAHomomorphism { op, args } => {
                write!(f, "map is not a homomorphism: operation `{op}` at {args:?}")
            }
            Error::NotInjective { a, b } => {
                write!(f, "map is not injective: {a} and {b} collide")
            }
            Error::NonModular(_) => {
                write!(f, "congruence lattice is not modular (pentagon found)")
            }
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::Falsified(msg) => write!(f, "internal falsification: {msg}"),
            Error::UniverseLimit { required, limit } => {
                write!(f, "universe of size {required} exceeds the limit {limit}")
            }
            Error::LatticeLimit { cap } => {
                write!(f, "congruence lattice exceeds the cap of {cap} elements")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
