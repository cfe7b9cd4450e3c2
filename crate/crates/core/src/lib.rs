//! Finite group cohomology over the integers and the Brauer group of
//! `mu_r`-gerbes over tame stacky curves.
//!
//! The crate is `no_std` (with `alloc`). Every answer is an exact
//! finitely generated abelian group computed from normalized bar complexes
//! with sparse Smith normal form:
//!
//! * [`abelian`]: integer matrices, Smith normal form, abelian groups and
//!   maps between them, homology of three-term complexes.
//! * [`groups`]: finite groups as validated multiplication tables, central
//!   extensions built from 2-cocycles.
//! * [`cohomology`]: `H^n(G, Z)`, `H^n(G, Z/m)` and `H^n(G, k^x)` for
//!   trivial actions, with inflation, restriction and Bockstein maps.
//! * [`fiber`]: per-stabilizer diagnostics for a gerbe (root-gerbe tests,
//!   inflation injectivity, sections).
//! * [`curve`]: the stacky-curve data model and the Brauer group report.
//! * [`oracle`]: independent slow paths used to certify the engine.

#![no_std]

extern crate alloc;

pub mod abelian;
pub mod cohomology;
pub mod curve;
mod error;
pub mod fiber;
pub mod groups;
pub mod oracle;

pub use error::{Error, Limits, Result};
