//! Exact computations in Coxeter groups, their Hecke algebras and the
//! combinatorial Hodge theory of Soergel modules.
//!
//! The crate is organized in layers:
//!
//! * [`numfield`] — exact arithmetic in the real cyclotomic field
//!   generated by `2cos(pi/N)`, with decidable signs.
//! * [`linalg`] — dense exact linear algebra over such a field.
//! * [`coxeter`] / [`realization`] — Coxeter systems, the reflection
//!   representation, element normal forms, Bruhat order, enumeration.
//! * [`laurent`] / [`hecke`] — the Hecke algebra over `Z[v,v^-1]`,
//!   Kazhdan–Lusztig basis, structure constants and positivity checks.
//! * [`poly`] / [`demazure`] — polynomial rings with the group action,
//!   Demazure operators, invariants and the coinvariant algebra.
//! * [`soergel`] — Bott–Samelson and indecomposable Soergel modules with
//!   their intersection forms and Krull–Schmidt decomposition.
//! * [`lefschetz`] — hard Lefschetz / Hodge–Riemann verification on
//!   exact Lefschetz data, primitive decomposition, sl2 triples.
//! * [`formats`] — serialization of inputs and certificates.

pub mod coxeter;
pub mod demazure;
pub mod error;
pub mod formats;
pub mod hecke;
pub mod laurent;
pub mod lefschetz;
pub mod linalg;
pub mod numfield;
pub mod poly;
pub mod realization;
pub mod soergel;

pub use error::{Error, Result};
