//! Exact finite models of surreal numbers and partial surreal algebras.
//!
//! The crate covers sign expansions and their arithmetic, the finite stages of the
//! free algebras `SA` and `ST`, Σ-structures with their axioms and morphisms, and the
//! pushout-based constructions relating them. Every claim about a finite structure is
//! decided by exhaustive search.

pub mod hierarchy;
pub mod io;
pub mod ordinal;
pub mod sigma;
pub mod surreal;
pub mod universal;

pub mod cli;

pub use surreal::Dyadic;

/// Dyadic rationals with machine-word numerators.
pub type Dyadic64 = Dyadic<i64>;
/// Dyadic rationals with 128-bit numerators.
pub type Dyadic128 = Dyadic<i128>;
/// Dyadic rationals with arbitrary-precision numerators.
pub type BigDyadic = Dyadic<num_bigint::BigInt>;

pub use ordinal::Ordinal;
pub use sigma::{Cut, Elem, Morphism, MorphismKind, Structure};
pub use surreal::SignExpansion;
