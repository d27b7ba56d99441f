//! Exact linear algebra over `Q` with integrality measured by a PID.

mod hnf;
mod lattice;
mod matrix;
mod rational;
mod ring;

pub use hnf::{hnf, HnfResult};
pub use lattice::LatticeBasis;
pub use matrix::Matrix;
pub use rational::{parse_rational, rat, Rational};
pub use ring::CoefficientRing;
