//! Generalized gcd sums twisted by Dirichlet characters.
//!
//! The crate is split into four layers:
//!
//! * [`arith`]: factorization and the multiplicative functions built on the
//!   generalized gcd `(a, b)_s` (Klee's `Φ_s`, `τ_s`, and the classical
//!   `φ`, `τ`, `σ_k`).
//! * [`characters`]: unit-group structure of `ℤ/p^a`, Dirichlet characters
//!   with exact root-of-unity values, conductors and primitive parts.
//! * [`identities`]: evaluators for the Menon-type sums and the closed forms
//!   they are claimed to equal.
//! * [`harness`]: exhaustive sweeps over parameter grids and report
//!   serialization, driven by the `menon` binary.

pub mod arith;
pub mod characters;
mod error;
pub mod harness;
pub mod identities;

pub use error::{Error, Result};
