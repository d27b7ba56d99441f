//! Exact computation of associated orders and free generators for Hopf
//! Galois actions presented by coordinate data over `Z` or `Z_(p)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`] exact rationals, coefficient rings, dense matrices, Hermite
//!   normal forms and lattices.
//! * [`action`] fields given by structure constants and Hopf action tables.
//! * [`order`] the associated order of the ring of integers.
//! * [`freeness`] generator matrices and free generator search.
//! * [`induction`] tensor (induced) structures and their order-level checks.
//! * [`groups`] regular subgroups of permutation groups and their types.
//! * [`cli`] the batch front end used by the `hopforders` binary.

pub mod action;
pub mod cli;
pub mod error;
pub mod freeness;
pub mod groups;
pub mod induction;
pub mod linalg;
pub mod order;

pub use error::{Error, Result};
pub use linalg::{CoefficientRing, HnfResult, LatticeBasis, Matrix, Rational};
