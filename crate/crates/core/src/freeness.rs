//! Freeness of `O_L` over an order and searches for free generators.
//!
//! For `β ∈ O_L` the matrix `D_β = (Σ_j β_j M_j)·B`, with `B` the order
//! basis in `w`-coordinates, has columns `e_i·β`. The element `β` generates
//! `O_L` freely exactly when `det D_β` is a unit of the coefficient ring.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{rat, Matrix, Rational};
use crate::order::OrderBasis;

pub const DEFAULT_SEARCH_BOUND: i64 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorCandidate {
    pub beta: Vec<Rational>,
    pub d_beta: Matrix,
    pub det: Rational,
}

impl GeneratorCandidate {
    /// Index of `A·β` in `O_L`, up to units.
    pub fn module_index(&self, order: &OrderBasis) -> Rational {
        order.ring().associate(&self.det)
    }
}

pub fn generator_matrix(order: &OrderBasis, beta: &[Rational]) -> Result<GeneratorCandidate> {
    let n = order.dim();
    if beta.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: beta.len() });
    }
    if !beta.iter().all(|x| order.ring().is_integral(x)) {
        return Err(Error::NonIntegralBeta);
    }
    let mut combo = Matrix::zeros(n, n);
    for (j, b) in beta.iter().enumerate() {
        if !num::Zero::is_zero(b) {
            combo = &combo + &order.bundle().block(j).scale(b);
        }
    }
    let d_beta = &combo * order.basis_in_w();
    let det = d_beta.det()?;
    Ok(GeneratorCandidate { beta: beta.to_vec(), d_beta, det })
}

pub fn is_free_generator(order: &OrderBasis, beta: &[Rational]) -> Result<bool> {
    let c = generator_matrix(order, beta)?;
    Ok(order.ring().is_unit(&c.det))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub bound: i64,
    pub generator: Option<GeneratorCandidate>,
}

/// The `idx`-th vector of `[-k, k]^n`, first coordinate most significant.
fn decode(mut idx: u64, n: usize, k: i64) -> Vec<i64> {
    let base = (2 * k + 1) as u64;
    let mut out = vec![0i64; n];
    for slot in out.iter_mut().rev() {
        *slot = (idx % base) as i64 - k;
        idx /= base;
    }
    out
}

/// Searches the box `[-bound, bound]^n` shell by shell (max-norm 1, 2, ..)
/// and returns the lexicographically first free generator of the first
/// shell that has one.
pub fn search_free_generator(order: &OrderBasis, bound: i64) -> Result<SearchOutcome> {
    let n = order.dim();
    for k in 1..=bound {
        let base = (2 * k + 1) as u64;
        let total = base
            .checked_pow(n as u32)
            .ok_or_else(|| Error::Validation(format!("search box [-{k},{k}]^{n} is too large")))?;
        let found = (0..total).into_par_iter().find_map_first(|idx| {
            let ints = decode(idx, n, k);
            if ints.iter().map(|x| x.abs()).max() != Some(k) {
                return None;
            }
            let beta: Vec<Rational> = ints.into_iter().map(rat).collect();
            let c = generator_matrix(order, &beta).ok()?;
            order.ring().is_unit(&c.det).then_some(c)
        });
        if found.is_some() {
            return Ok(SearchOutcome { bound, generator: found });
        }
    }
    Ok(SearchOutcome { bound, generator: None })
}
