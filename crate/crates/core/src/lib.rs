//! Finite additively idempotent semirings.
//!
//! Tables, identities over them, syntactic satisfaction criteria for small
//! semirings, constructions (flat, word, null and idempotent extensions),
//! isomorphism and embedding search, census enumeration, a catalogue of named
//! algebras and a checker for equational derivation certificates.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod constructions;
pub mod criteria;
pub mod derivation;
pub mod enumerate;
pub mod eval;
pub mod iso;
pub mod json;
pub mod par;
pub mod term;

pub use algebra::{AlgebraError, Element, FiniteAiSemiring, Morphism};
pub use term::{Identity, SimpleIdentity, Term, Var, Word};
