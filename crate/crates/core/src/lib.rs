//! Exact modular data.
//!
//! A modular datum is a finite index set with a unit and an involution, a
//! symmetric Verlinde matrix `S` and a diagonal Dehn matrix `T`, all with
//! entries in a cyclotomic field. This crate constructs such data, checks
//! their axioms and derived identities exactly, and carries out the
//! surrounding analysis: fusion rings, Galois actions on the index set,
//! Gaussian-sum sign relations, central-charge extensions, and deciding
//! whether the induced `SL(2, Z)` representations factor through
//! `SL(2, Z/M)`.
//!
//! Everything here is pure and allocation-only; serialization, files and the
//! command line live in the `moddata-cli` crate.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod check;
pub mod constructors;
pub mod cyclotomic;
pub mod datum;
mod error;
pub mod extension;
pub mod fusion;
pub mod galois;
pub mod matrix;

pub use check::{Check, Report};
pub use cyclotomic::{jacobi_symbol, sqrt_integer, CycloNum, Rational};
pub use datum::{CheckedDatum, DatumReport, ModularDatum};
pub use error::Error;
pub use extension::ExtendedDatum;
pub use fusion::{FusionElement, FusionTable};
pub use matrix::Matrix;

pub type Result<T, E = Error> = core::result::Result<T, E>;
