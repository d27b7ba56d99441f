use num::integer::Integer;
use num::{BigInt, One, Signed, Zero};

use super::matrix::Matrix;
use super::rational::Rational;
use super::ring::CoefficientRing;
use crate::error::{Error, Result};

/// Row-style Hermite normal form of a full column rank matrix.
///
/// `u * (input / content)` equals `d` stacked over `zero_rows` zero rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnfResult {
    pub u: Matrix,
    pub d: Matrix,
    pub content: Rational,
    pub zero_rows: usize,
}

impl HnfResult {
    /// `[D; 0]`, the full `m x n` echelon matrix.
    pub fn echelon(&self) -> Matrix {
        let zeros = Matrix::zeros(self.zero_rows, self.d.cols());
        Matrix::vstack(&[self.d.clone(), zeros]).expect("same column count")
    }
}

type IntRows = Vec<Vec<BigInt>>;

fn identity_rows(m: usize) -> IntRows {
    (0..m).map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

/// `row[dst] -= q * row[src]` on both the working matrix and the transform.
fn sub_row(a: &mut IntRows, u: &mut IntRows, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for m in [a, u] {
        let (s, d) = if src < dst {
            let (lo, hi) = m.split_at_mut(dst);
            (&lo[src], &mut hi[0])
        } else {
            let (lo, hi) = m.split_at_mut(src);
            (&hi[0], &mut lo[dst])
        };
        for (x, y) in d.iter_mut().zip(s) {
            if !y.is_zero() {
                *x -= q * y;
            }
        }
    }
}

/// Integer HNF: positive pivots on the diagonal, entries above each pivot
/// in `[0, pivot)`.
fn integer_hnf(mut a: IntRows, ncols: usize) -> Result<(IntRows, IntRows)> {
    let m = a.len();
    let mut u = identity_rows(m);
    for k in 0..ncols {
        loop {
            let nonzero: Vec<usize> = (k..m).filter(|&i| !a[i][k].is_zero()).collect();
            let Some(&best) = nonzero.iter().min_by_key(|&&i| a[i][k].abs()) else {
                return Err(Error::ColumnRankDeficient { rank: k, cols: ncols });
            };
            a.swap(best, k);
            u.swap(best, k);
            let mut done = true;
            for i in k + 1..m {
                if a[i][k].is_zero() {
                    continue;
                }
                let q = a[i][k].div_floor(&a[k][k]);
                sub_row(&mut a, &mut u, i, k, &q);
                if !a[i][k].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[k][k].is_negative() {
            for x in a[k].iter_mut().chain(u[k].iter_mut()) {
                *x = -&*x;
            }
        }
        for i in 0..k {
            let q = a[i][k].div_floor(&a[k][k]);
            sub_row(&mut a, &mut u, i, k, &q);
        }
    }
    Ok((a, u))
}

fn to_matrix(rows: &[Vec<BigInt>], ncols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows.len(), ncols);
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().take(ncols).enumerate() {
            m[(i, j)] = Rational::from_integer(x.clone());
        }
    }
    m
}

fn scale_row(m: &mut Matrix, i: usize, s: &Rational) {
    for j in 0..m.cols() {
        let v = &m[(i, j)] * s;
        m[(i, j)] = v;
    }
}

fn sub_row_rat(m: &mut Matrix, dst: usize, src: usize, q: &Rational) {
    for j in 0..m.cols() {
        let v = &m[(src, j)] * q;
        m[(dst, j)] -= v;
    }
}

/// Hermite normal form of `m` over `ring`.
///
/// Over `Z` the pivots are positive and the entries above them lie in
/// `[0, pivot)`. Over `Z_(p)` the integer form is renormalized: each pivot row
/// is divided by the prime-to-`p` part of its pivot, so pivots are powers of
/// `p`, and entries above a pivot `p^v` are reduced to integers in the
/// symmetric range `(-p^v/2, p^v/2]`.
pub fn hnf(m: &Matrix, ring: &CoefficientRing) -> Result<HnfResult> {
    let (rows, n) = (m.rows(), m.cols());
    let content = ring.content(m.entries()).ok_or(Error::ZeroMatrix)?;
    if rows < n {
        return Err(Error::ColumnRankDeficient { rank: m.rank(), cols: n });
    }
    let scaled = m.scale(&content.recip());
    // Over Z_(p) the scaled entries may still carry p-unit denominators.
    let lcm = scaled.entries().iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let lcm_q = Rational::from_integer(lcm);
    let ints: IntRows = (0..rows)
        .map(|i| scaled.row(i).iter().map(|x| (x * &lcm_q).to_integer()).collect())
        .collect();
    let (a, u) = integer_hnf(ints, n).map_err(|_| Error::ColumnRankDeficient { rank: m.rank(), cols: n })?;
    let mut d = to_matrix(&a[..n], n);
    let mut u = to_matrix(&u, rows).scale(&lcm_q);

    if ring.prime().is_some() {
        for k in 0..n {
            let pivot = d[(k, k)].clone();
            let unit = &pivot / ring.associate(&pivot);
            let inv = unit.recip();
            scale_row(&mut d, k, &inv);
            scale_row(&mut u, k, &inv);
        }
        for k in 0..n {
            let modulus = d[(k, k)].clone();
            debug_assert!(ring.associate(&modulus) == modulus && !modulus.is_zero());
            for i in 0..k {
                let a = d[(i, k)].clone();
                let r = ring.residue(&a, &modulus);
                let q = (a - r) / &modulus;
                if !q.is_zero() {
                    sub_row_rat(&mut d, i, k, &q);
                    sub_row_rat(&mut u, i, k, &q);
                }
            }
        }
    }
    Ok(HnfResult { u, d, content, zero_rows: rows - n })
}
