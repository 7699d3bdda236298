//! Exact-arithmetic toolkit for central hyperplane arrangements.
//!
//! The crate decides niceness and inductive factoredness of central
//! arrangements over Q and Q(zeta_r), produces machine-checkable induction
//! certificates, localizes those certificates to arbitrary flats, and
//! cross-checks against a combinatorial inductive-freeness oracle. All
//! arithmetic is exact; every search is deterministic.

pub mod bitset;
pub mod catalog;
pub mod error;
pub mod exactfield;
pub mod factorization;
pub mod freeness;
pub mod geometry;
pub mod lattice;

pub use bitset::IndexSet;
pub use error::{Error, Result};
pub use exactfield::{FieldContext, FieldElement, Rational};
pub use geometry::{Arrangement, Functional, Subspace};
