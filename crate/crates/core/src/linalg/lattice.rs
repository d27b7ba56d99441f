use super::matrix::Matrix;
use super::rational::Rational;
use super::ring::CoefficientRing;
use crate::error::{Error, Result};

/// A full-rank lattice over `ring` spanned by the columns of `basis`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    basis: Matrix,
    ring: CoefficientRing,
}

impl LatticeBasis {
    pub fn new(basis: Matrix, ring: CoefficientRing) -> Result<Self> {
        let rank = basis.rank();
        if rank != basis.cols() {
            return Err(Error::ColumnRankDeficient { rank, cols: basis.cols() });
        }
        Ok(LatticeBasis { basis, ring })
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.ring
    }

    /// Coordinates of `v` in the basis, if `v` lies in the rational span.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if v.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), found: v.len() });
        }
        self.basis.solve(v)
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        Ok(self
            .coordinates(v)?
            .is_some_and(|x| x.iter().all(|c| self.ring.is_integral(c))))
    }

    /// Every basis vector of `other` lies in `self`.
    pub fn includes(&self, other: &LatticeBasis) -> Result<bool> {
        if other.ambient_dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), found: other.ambient_dim() });
        }
        for j in 0..other.rank() {
            if !self.contains(&other.basis.column(j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as lattices, decided by mutual inclusion.
    pub fn lattice_equal(&self, other: &LatticeBasis) -> Result<bool> {
        if self.ring != other.ring {
            return Err(Error::Validation(format!("rings differ: {} vs {}", self.ring, other.ring)));
        }
        if self.rank() != other.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: other.rank() });
        }
        Ok(self.includes(other)? && other.includes(self)?)
    }

    /// Right action by a change-of-basis matrix; unimodular `t` keeps the lattice.
    pub fn transform(&self, t: &Matrix) -> Result<LatticeBasis> {
        LatticeBasis::new(self.basis.try_mul(t)?, self.ring.clone())
    }
}
