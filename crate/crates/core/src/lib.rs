//! Finite-model workbench for quantum-Wajsberg algebras.
//!
//! * [`algebra`]: finite algebras as implication tables plus derived operations.
//! * [`axioms`]: class membership checks with counterexample witnesses.
//! * [`center`]: the commutative and orthomodular centers and their structure checks.
//! * [`term`]: a small term language, statement evaluation and the identity corpus.
//! * [`search`]: isomorph-free enumeration and countermodel search.

pub mod algebra;
pub mod axioms;
pub mod builtin;
pub mod center;
pub mod error;
pub mod format;
pub mod search;
pub mod term;

pub use algebra::{DerivedTables, Elem, FiniteAlgebra, Subset};
pub use axioms::{AlgebraClass, ClassReport, Witness};
pub use error::{AlgebraError, AxiomError, CenterError};
