//! A computation engine for finite categories and the boilerplate they
//! generate in dependent type theory.
//!
//! The crate builds explicit finite categories from presentations
//! ([`fincat`]), validates the inverse/Reedy axioms and computes coslices and
//! matching-object index sets ([`inverse`], [`reedy`]), constructs the
//! category of elements of the positive nerve ([`nerve`]), performs the
//! component bookkeeping of the strictification construction ([`strictify`]),
//! and emits dependent-type signatures for Reedy-fibrant, weak (homotopy
//! coherent), semisimplicial and simplicial diagram types up to a finite
//! level ([`emit`]).
//!
//! Everything emitted is syntax: schemas of named, typed components. No
//! dependent type is ever evaluated or checked for inhabitation.
//!
//! Exhaustive checks (degree monotonicity, factorization search, and the
//! like) run data-parallel via rayon when the default `parallel` feature is
//! enabled; disabling it falls back to sequential loops with identical
//! results and report ordering.

pub mod emit;
pub mod exec;
pub mod fincat;
pub mod inverse;
pub mod nerve;
pub mod reedy;
pub mod report;
pub mod simplex;
pub mod strictify;

pub use exec::ExecMode;
pub use fincat::{CategorySpec, FinCategory, MorId, ObjId};
pub use report::Report;
