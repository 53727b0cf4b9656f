//! ringlab: a laboratory for finite unital rings.
//!
//! The crate computes the Jacobson radical J(R) and its root set sqrt J(R),
//! decides the clean-family decomposition properties of a ring (clean,
//! nil-clean, J-clean, sqrt J-clean, each plainly, strongly and uniquely),
//! builds the matrix-flavoured constructions those properties interact with,
//! and runs a registry of executable theorems over a ring corpus.
//!
//! Rings live on the carrier `{0, .., n-1}` with explicit or structured
//! operation tables; every ring is validated against the ring axioms before
//! anything else may touch it.

pub mod classify;
pub mod construct;
pub mod error;
pub mod expr;
pub mod quotient;
pub mod radicals;
pub mod ring;
pub mod ringfile;
pub mod subsets;
pub mod theorems;

pub use construct::{build, build_with, BuildOptions, ConstructionSpec};
pub use error::RingError;
pub use quotient::{quotient_ring, quotient_ring_named, QuotientMap};
pub use radicals::{
    idempotents_lift_mod, jacobson_radical, sqrt_jacobson, JacobsonData, LiftingReport,
};
pub use ring::{validate_axioms, FiniteRing, UnvalidatedRing, ValidationMode, ValidationReport};
pub use subsets::{
    center, ideal_closure, idempotents, inverse, nilpotents, units, ElementSubset, Ideal,
};
