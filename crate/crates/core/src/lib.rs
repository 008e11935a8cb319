//! Finite probability groups and the quantitative mixing machinery built on them.
//!
//! A finite group with its normalized counting measure is the simplest
//! probability group: left and right translation and inversion preserve the
//! measure, and every subset is measurable. This crate works with such groups
//! as dense index tables and provides:
//!
//! - group construction from family descriptors (`cyclic:12`, `sl2:13`, ...)
//!   together with conjugacy classes and axiom checks ([`group`], [`conjugacy`]);
//! - exact irreducible character degrees by modular class-matrix splitting,
//!   and from them the quasirandomness degree `D` ([`character`]);
//! - measure-preserving actions, Koopman operators and invariant projections
//!   ([`action`]);
//! - the ε-mixing error functional, exact and Monte Carlo ([`mixing`]);
//! - the triple-recurrence functional, its case split, the correlation
//!   family, and the van der Corput and Bessel inequality checks
//!   ([`recurrence`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod action;
pub mod character;
pub mod conjugacy;
pub mod descriptor;
mod error;
pub mod group;
pub mod mixing;
pub mod modular;
pub mod recurrence;
pub mod rng;
pub mod sum;



pub use action::{ActionKind, ActionTable, NormMode, Observable, ProbabilitySpace};
pub use character::{ClassConstants, DegreeMultiset, QuasirandomDegree};
pub use conjugacy::ConjugacyData;
pub use descriptor::Family;
pub use error::Error;
pub use group::GroupTable;

/// Complex scalar used for every observable value.
pub type C64 = num_complex::Complex64;

/// Absolute slack added to every bound comparison.
pub const BOUND_TOLERANCE: f64 = 1e-9;

pub type Result<T, E = Error> = core::result::Result<T, E>;
