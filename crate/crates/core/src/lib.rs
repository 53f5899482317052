//! Decide consistency of ordinary polynomial DAE systems over ℚ by bounded
//! prolongation, produce and verify membership certificates, and evaluate
//! the effective differential Nullstellensatz bounds exactly.
//!
//! The crate is organised bottom-up:
//!
//! - [`ring`]: sparse rational polynomials in jet variables `x1^(j)`, `u1^(j)`.
//! - [`diffcore`]: total derivative, prolongation, order, substitution.
//! - [`groebner`]: Buchberger with cofactor tracking, membership,
//!   elimination, dimension, zero-dimensional radicals, and an independent
//!   Macaulay-matrix membership oracle.
//! - [`bounds`]: closed-form bounds with exponent-tower arithmetic.
//! - [`reduce`]: first-order reduction and the Rabinowitsch transform.
//! - [`descent`]: the dimension-descending chain of radical ideals and the
//!   invariants `ε_i`, `k_i` computed exactly.
//! - [`decide`]: consistency verdicts, strong Nullstellensatz search,
//!   certificate verification.
//! - [`text`] and [`cli`]: the input grammar, JSON output, and the `dnss`
//!   command line driver.

pub mod bounds;
pub mod cli;
pub mod decide;
pub mod descent;
pub mod diffcore;
mod error;
pub mod groebner;
pub mod reduce;
pub mod ring;
pub mod text;

pub use error::{Error, Result};
