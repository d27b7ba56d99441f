use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num::integer::Integer;
use num::{BigInt, One, Signed, Zero};

use super::rational::{rat, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, found: bad.len() });
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Integer literal matrix, mostly for tests and fixtures.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.as_ref().iter().map(|&x| rat(x)).collect()).collect();
        Matrix::from_rows(rows).expect("ragged integer literal")
    }

    pub fn from_columns(cols: &[Vec<Rational>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            if col.len() != r {
                return Err(Error::DimensionMismatch { expected: r, found: col.len() });
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn column_vector(v: &[Rational]) -> Self {
        Matrix { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let mut m = Matrix::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_block(&self, start: usize, end: usize) -> Self {
        Matrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    pub fn vstack(blocks: &[Matrix]) -> Result<Self> {
        let cols = blocks.first().map_or(0, Matrix::cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: b.cols });
            }
            rows += b.rows;
            data.extend_from_slice(&b.data);
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Column-major vectorization: entry `(i, j)` goes to position `rows * j + i`.
    pub fn vectorize(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self[(i, j)].clone());
            }
        }
        v
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product: block `(i, j)` of the result is `self[i, j] * rhs`.
    pub fn kronecker(&self, rhs: &Matrix) -> Matrix {
        let (p, q) = (rhs.rows, rhs.cols);
        let mut out = Matrix::zeros(self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        out[(i * p + k, j * q + l)] = a * &rhs[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i)).all(|j| self[(i, j)].is_zero()))
    }

    /// Rows scaled to integers; returns the integer rows and the product of
    /// the scale factors, so that `det(self) = det(ints) / factor`.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut scales = Vec::with_capacity(self.rows);
        let rows = (0..self.rows)
            .map(|i| {
                let l = self.row(i).iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
                let r = self.row(i).iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
                scales.push(l);
                r
            })
            .collect();
        (rows, scales)
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!("determinant of {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let (mut a, scales) = self.integer_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let denom: BigInt = scales.iter().product();
        Ok(Rational::new(sign * &a[n - 1][n - 1], denom))
    }

    /// Determinant and inverse via fraction-free Gauss-Jordan elimination of
    /// `[A | I]`. Fails with `Singular` when the determinant vanishes.
    pub fn det_inverse(&self) -> Result<(Rational, Matrix)> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!("inverse of {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let (ints, scales) = self.integer_rows();
        let mut a: Vec<Vec<BigInt>> = ints
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
                row
            })
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let p = (k..n).find(|&i| !a[i][k].is_zero()).ok_or(Error::Singular)?;
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            let pivot_row = a[k].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == k {
                    continue;
                }
                let f = row[k].clone();
                for j in 0..2 * n {
                    if j == k {
                        continue;
                    }
                    row[j] = (&pivot_row[k] * &row[j] - &f * &pivot_row[j]) / &prev;
                }
                row[k] = BigInt::zero();
            }
            prev = pivot_row[k].clone();
        }
        // left block is prev * I, right block is prev * (S A)^{-1}
        let scaled_det = prev;
        let denom: BigInt = scales.iter().product();
        let det = Rational::new(&sign * &scaled_det, denom);
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                // (S A)^{-1} S: column j of the inverse picks up scale s_j
                inv[(i, j)] = Rational::new(&a[i][n + j] * &scales[j], scaled_det.clone());
            }
        }
        Ok((det, inv))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.det_inverse().map(|(_, inv)| inv)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = &m[(r, j)] * &f;
                        m[(i, j)] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// The unique `x` with `self * x = b` when `self` has full column rank
    /// and `b` lies in its column space; `None` otherwise.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        if pivots.len() != self.cols {
            return Err(Error::ColumnRankDeficient { rank: pivots.len(), cols: self.cols });
        }
        Ok(Some((0..self.cols).map(|i| r[(i, self.cols)].clone()).collect()))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Strings `"p/q"` row by row, the serialized form used by reports.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(ToString::to_string).collect()).collect()
    }

    pub fn max_abs_entry(&self) -> Rational {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{:?}", self.to_strings())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    /// Cofactor expansion, independent of the elimination code.
    fn cofactor_det(m: &Matrix) -> Rational {
        let n = m.rows();
        if n == 0 {
            return Rational::one();
        }
        if n == 1 {
            return m[(0, 0)].clone();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            if m[(0, j)].is_zero() {
                continue;
            }
            let minor = minor(m, 0, j);
            let term = &m[(0, j)] * cofactor_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn minor(m: &Matrix, r: usize, c: usize) -> Matrix {
        let rows: Vec<Vec<Rational>> = (0..m.rows())
            .filter(|&i| i != r)
            .map(|i| (0..m.cols()).filter(|&j| j != c).map(|j| m[(i, j)].clone()).collect())
            .collect();
        Matrix::from_rows(rows).unwrap()
    }

    fn adjugate_inverse(m: &Matrix) -> Matrix {
        let n = m.rows();
        let d = cofactor_det(m);
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let c = cofactor_det(&minor(m, j, i));
                inv[(i, j)] = if (i + j) % 2 == 0 { c / &d } else { -c / &d };
            }
        }
        inv
    }

    #[test]
    fn triangular_inverse_with_fractions() {
        let d = Matrix::from_ints(&[[1, 0, 2], [0, 3, 3], [0, 0, 6]]);
        let (det, inv) = d.det_inverse().unwrap();
        assert_eq!(det, rat(18));
        let expected = Matrix::from_rows(vec![
            vec![q("1"), q("0"), q("-1/3")],
            vec![q("0"), q("1/3"), q("-1/6")],
            vec![q("0"), q("0"), q("1/6")],
        ])
        .unwrap();
        assert_eq!(inv, expected);
    }

    #[test]
    fn identity_inverse() {
        for n in 0..4 {
            let (d, inv) = Matrix::identity(n).det_inverse().unwrap();
            assert_eq!(d, rat(1));
            assert_eq!(inv, Matrix::identity(n));
        }
    }

    #[test]
    fn singular_inverse_fails() {
        let m = Matrix::from_ints(&[[1, 2], [2, 4]]);
        assert_eq!(m.det().unwrap(), rat(0));
        assert_eq!(m.inverse(), Err(Error::Singular));
    }

    proptest::proptest! {
        #[test]
        fn random_matrices_match_cofactor_oracle(rows in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 4), 4)) {
            let m = Matrix::from_ints(&rows);
            let oracle = cofactor_det(&m);
            assert_eq!(m.det().unwrap(), oracle);
            if !oracle.is_zero() {
                let (d, inv) = m.det_inverse().unwrap();
                assert_eq!(d, oracle);
                assert_eq!(inv, adjugate_inverse(&m));
                assert_eq!(&m * &inv, Matrix::identity(4));
            }
        }
    }

    #[test]
    fn rational_entries_det_inverse() {
        let m = Matrix::from_rows(vec![vec![q("1/2"), q("1/3")], vec![q("-2/5"), q("7")]]).unwrap();
        let (d, inv) = m.det_inverse().unwrap();
        assert_eq!(d, cofactor_det(&m));
        assert_eq!(&m * &inv, Matrix::identity(2));
    }

    #[test]
    fn kronecker_of_hermite_forms() {
        let d1 = Matrix::from_ints(&[[1, 0, -1], [0, 1, 0], [0, 0, 3]]);
        let d2 = Matrix::from_ints(&[[1, -1], [0, 2]]);
        let expected = Matrix::from_ints(&[
            [1, -1, 0, 0, -1, 1],
            [0, 2, 0, 0, 0, -2],
            [0, 0, 1, -1, 0, 0],
            [0, 0, 0, 2, 0, 0],
            [0, 0, 0, 0, 3, -3],
            [0, 0, 0, 0, 0, 6],
        ]);
        assert_eq!(d1.kronecker(&d2), expected);
    }

    #[test]
    fn kronecker_diagonal_and_identity() {
        let a = Matrix::diagonal(&[rat(0), rat(3), rat(-3)]);
        let b = Matrix::diagonal(&[rat(1), rat(-1)]);
        let expected = Matrix::diagonal(&[0, 0, 3, -3, -3, 3].map(rat));
        assert_eq!(a.kronecker(&b), expected);
        assert_eq!(a.kronecker(&Matrix::identity(1)), a);
    }

    #[test]
    fn kronecker_mixed_product() {
        let a = Matrix::from_ints(&[[1, 2], [3, 4]]);
        let b = Matrix::from_ints(&[[0, 1, -1]]);
        let c = Matrix::from_ints(&[[2, 0], [1, -1]]);
        let d = Matrix::from_ints(&[[1], [5], [2]]);
        assert_eq!(&a.kronecker(&b) * &c.kronecker(&d), (&a * &c).kronecker(&(&b * &d)));
    }

    #[test]
    fn vectorization_is_column_major() {
        let m = Matrix::from_ints(&[[1, 2], [3, 4]]);
        assert_eq!(m.vectorize(), vec![rat(1), rat(3), rat(2), rat(4)]);
    }

    #[test]
    fn solve_and_rank() {
        let m = Matrix::from_ints(&[[1, 1], [0, 0], [0, 0], [1, -1]]);
        assert_eq!(m.rank(), 2);
        let x = m.solve(&[rat(2), rat(0), rat(0), rat(0)]).unwrap().unwrap();
        assert_eq!(x, vec![rat(1), rat(1)]);
        assert_eq!(m.solve(&[rat(0), rat(1), rat(0), rat(0)]).unwrap(), None);
        assert!(m.solve(&[rat(0)]).is_err());
    }
}
