//! Fields and Hopf actions as exact coordinate data.
//!
//! A [`FieldPresentation`] is a commutative algebra given by structure
//! constants in a distinguished integral basis `γ_1..γ_n`. An [`ActionTable`]
//! records the coordinates of `w_i · γ_j` for a basis `w_1..w_n` of the Hopf
//! algebra. Bundling a table with a coefficient ring yields the `n² x n`
//! action matrix whose `i`-th column is the column-major vectorization of the
//! matrix of `w_i`.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{CoefficientRing, Matrix, Rational};

/// Coordinates of one element in a fixed basis.
pub type Coords = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldPresentation {
    labels: Vec<String>,
    /// `constants[j][k][l]`: coefficient of `γ_l` in `γ_j γ_k`.
    constants: Vec<Vec<Coords>>,
    one_index: usize,
}

impl FieldPresentation {
    /// Validates shape, commutativity, associativity and the unit.
    pub fn new(labels: Vec<String>, constants: Vec<Vec<Coords>>, one_index: usize) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::ShapeMismatch("field of dimension 0".into()));
        }
        if constants.len() != n
            || constants.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n))
        {
            return Err(Error::ShapeMismatch(format!("structure constants must be {n}x{n}x{n}")));
        }
        if one_index >= n {
            return Err(Error::ShapeMismatch(format!("one_index {one_index} out of range")));
        }
        let f = FieldPresentation { labels, constants, one_index };
        f.check_axioms()?;
        Ok(f)
    }

    /// `K[x]/(f)` in the power basis `1, x, .., x^{n-1}`; `coeffs` are
    /// `c_0..c_{n-1}` of the monic `f = x^n + c_{n-1} x^{n-1} + .. + c_0`.
    pub fn power_basis(var: &str, coeffs: &[Rational]) -> Result<Self> {
        let n = coeffs.len();
        if n == 0 {
            return Err(Error::ShapeMismatch("polynomial of degree 0".into()));
        }
        // reduce x^e for e < 2n - 1
        let mut powers: Vec<Coords> = Vec::with_capacity(2 * n - 1);
        for e in 0..2 * n - 1 {
            let v = if e < n {
                let mut v = vec![Rational::zero(); n];
                v[e] = Rational::one();
                v
            } else {
                let prev = &powers[e - 1];
                let mut v = vec![Rational::zero(); n];
                for i in 0..n - 1 {
                    v[i + 1] = prev[i].clone();
                }
                // x^n = -(c_0 + .. + c_{n-1} x^{n-1})
                let top = prev[n - 1].clone();
                for (i, c) in coeffs.iter().enumerate() {
                    v[i] -= &top * c;
                }
                v
            };
            powers.push(v);
        }
        let constants = (0..n).map(|j| (0..n).map(|k| powers[j + k].clone()).collect()).collect();
        let labels = (0..n)
            .map(|e| match e {
                0 => "1".to_string(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            })
            .collect();
        FieldPresentation::new(labels, constants, 0)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.dim();
        for j in 0..n {
            for k in 0..n {
                if self.constants[j][k] != self.constants[k][j] {
                    return Err(Error::Validation(format!("commutativity fails for basis elements {j}, {k}")));
                }
            }
        }
        for k in 0..n {
            for l in 0..n {
                let expected = if k == l { Rational::one() } else { Rational::zero() };
                if self.constants[self.one_index][k][l] != expected {
                    return Err(Error::Validation(format!("unit: basis element {} is not the identity", self.one_index)));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let left = self.mul(&self.constants[a][b], &self.unit_vector(c));
                    let right = self.mul(&self.unit_vector(a), &self.constants[b][c]);
                    if left != right {
                        return Err(Error::Validation(format!("associativity fails for basis elements {a}, {b}, {c}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn constants(&self) -> &[Vec<Coords>] {
        &self.constants
    }

    pub fn one_index(&self) -> usize {
        self.one_index
    }

    pub fn unit_vector(&self, i: usize) -> Coords {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    pub fn one(&self) -> Coords {
        self.unit_vector(self.one_index)
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Coords {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (k, yk) in y.iter().enumerate() {
                if yk.is_zero() {
                    continue;
                }
                let s = xj * yk;
                for (o, c) in out.iter_mut().zip(&self.constants[j][k]) {
                    if !c.is_zero() {
                        *o += &s * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ x·y`; column `k` holds the coordinates of `x·γ_k`.
    pub fn mult_matrix(&self, x: &[Rational]) -> Result<Matrix> {
        let n = self.dim();
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: x.len() });
        }
        let cols: Vec<Coords> = (0..n).map(|k| self.mul(x, &self.unit_vector(k))).collect();
        Matrix::from_columns(&cols)
    }

    pub fn trace(&self, x: &[Rational]) -> Result<Rational> {
        Ok(self.mult_matrix(x)?.trace())
    }

    /// Determinant of the trace form `Tr(γ_i γ_j)`.
    pub fn discriminant(&self) -> Result<Rational> {
        let n = self.dim();
        let mut form = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                form[(i, j)] = self.trace(&self.constants[i][j])?;
            }
        }
        form.det()
    }

    /// `E ⊗ F` in the product basis `α_k z_l`, left index slow.
    pub fn tensor(&self, other: &FieldPresentation) -> FieldPresentation {
        let (r, u) = (self.dim(), other.dim());
        let mut constants = vec![vec![Vec::new(); r * u]; r * u];
        for a in 0..r {
            for c in 0..u {
                for b in 0..r {
                    for d in 0..u {
                        constants[a * u + c][b * u + d] =
                            kron_vec(&self.constants[a][b], &other.constants[c][d]);
                    }
                }
            }
        }
        let labels = self
            .labels
            .iter()
            .flat_map(|x| other.labels.iter().map(move |y| product_label(x, y)))
            .collect();
        FieldPresentation { labels, constants, one_index: self.one_index * u + other.one_index }
    }
}

fn product_label(x: &str, y: &str) -> String {
    match (x, y) {
        ("1", _) => y.to_string(),
        (_, "1") => x.to_string(),
        _ => format!("{x}*{y}"),
    }
}

/// Kronecker product of coordinate vectors.
pub fn kron_vec(x: &[Rational], y: &[Rational]) -> Coords {
    x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionTable {
    hopf_labels: Vec<String>,
    field: FieldPresentation,
    /// `entries[i][j]`: coordinates of `w_i · γ_j`.
    entries: Vec<Vec<Coords>>,
}

impl ActionTable {
    pub fn new(hopf_labels: Vec<String>, field: FieldPresentation, entries: Vec<Vec<Coords>>) -> Result<Self> {
        let n = field.dim();
        if hopf_labels.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "{} Hopf basis elements for a field of dimension {n}",
                hopf_labels.len()
            )));
        }
        if entries.len() != n || entries.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::ShapeMismatch(format!("action table must be {n}x{n} with vectors of length {n}")));
        }
        Ok(ActionTable { hopf_labels, field, entries })
    }

    pub fn dim(&self) -> usize {
        self.field.dim()
    }

    pub fn hopf_labels(&self) -> &[String] {
        &self.hopf_labels
    }

    pub fn field(&self) -> &FieldPresentation {
        &self.field
    }

    pub fn entries(&self) -> &[Vec<Coords>] {
        &self.entries
    }

    /// Matrix of `w_i`: column `j` holds `w_i · γ_j`.
    pub fn rep_of_basis(&self, i: usize) -> Matrix {
        Matrix::from_columns(&self.entries[i]).expect("validated shape")
    }

    /// The classical action of a group algebra on a normal basis is a
    /// permutation action; this builds it from `perm[i][j] = k` meaning
    /// `σ_i(γ_j) = γ_k`.
    pub fn from_permutations(hopf_labels: Vec<String>, field: FieldPresentation, perm: &[Vec<usize>]) -> Result<Self> {
        let entries = perm.iter().map(|row| row.iter().map(|&k| field.unit_vector(k)).collect()).collect();
        ActionTable::new(hopf_labels, field, entries)
    }

    /// `(w_i η_j)·(α_k z_l) = (w_i·α_k)(η_j·z_l)` in Kronecker order.
    pub fn tensor(&self, other: &ActionTable) -> ActionTable {
        let (r, u) = (self.dim(), other.dim());
        let field = self.field.tensor(&other.field);
        let mut entries = vec![vec![Vec::new(); r * u]; r * u];
        for i in 0..r {
            for j in 0..u {
                for k in 0..r {
                    for l in 0..u {
                        entries[i * u + j][k * u + l] = kron_vec(&self.entries[i][k], &other.entries[j][l]);
                    }
                }
            }
        }
        let hopf_labels = self
            .hopf_labels
            .iter()
            .flat_map(|x| other.hopf_labels.iter().map(move |y| format!("{x}*{y}")))
            .collect();
        ActionTable { hopf_labels, field, entries }
    }

    /// Same table with one coordinate replaced; used to build perturbations.
    pub fn with_entry(&self, i: usize, j: usize, l: usize, value: Rational) -> ActionTable {
        let mut t = self.clone();
        t.entries[i][j][l] = value;
        t
    }
}

/// An action table together with its action matrix `M` and blocks `M_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionBundle {
    table: ActionTable,
    matrix: Matrix,
    blocks: Vec<Matrix>,
    ring: CoefficientRing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ActionReport {
    pub rank_ok: bool,
    pub j_bijective: bool,
}

impl ActionBundle {
    pub fn new(table: ActionTable, ring: CoefficientRing) -> Result<Self> {
        let n = table.dim();
        let mut matrix = Matrix::zeros(n * n, n);
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    matrix[(n * j + l, i)] = table.entries[i][j][l].clone();
                }
            }
        }
        let blocks = (0..n).map(|j| matrix.row_block(n * j, n * (j + 1))).collect();
        Ok(ActionBundle { table, matrix, blocks, ring })
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn table(&self) -> &ActionTable {
        &self.table
    }

    pub fn field(&self) -> &FieldPresentation {
        &self.table.field
    }

    /// The `n² x n` action matrix.
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Block `M_j`: the matrix of `h ↦ h·γ_j`.
    pub fn block(&self, j: usize) -> &Matrix {
        &self.blocks[j]
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.ring
    }

    /// Matrix of `x ↦ h·x` for `h` given in the `w`-basis.
    pub fn rep_matrix(&self, h: &[Rational]) -> Result<Matrix> {
        let n = self.dim();
        if h.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: h.len() });
        }
        let mut out = Matrix::zeros(n, n);
        for (i, hi) in h.iter().enumerate() {
            if !hi.is_zero() {
                out = &out + &self.table.rep_of_basis(i).scale(hi);
            }
        }
        Ok(out)
    }

    /// Coordinates of `h·x` in the integral basis.
    pub fn act(&self, h: &[Rational], x: &[Rational]) -> Result<Coords> {
        self.rep_matrix(h)?.mul_vec(x)
    }

    pub fn verify(&self) -> ActionReport {
        let n = self.dim();
        let rank_ok = self.matrix.rank() == n;
        let field = self.field();
        let mut composites = Vec::with_capacity(n * n);
        for j in 0..n {
            let mult = field.mult_matrix(&field.unit_vector(j)).expect("basis vector");
            for i in 0..n {
                composites.push((&mult * &self.table.rep_of_basis(i)).vectorize());
            }
        }
        let j_bijective = Matrix::from_columns(&composites).expect("square").rank() == n * n;
        ActionReport { rank_ok, j_bijective }
    }

    /// The unique `x` with `Σ x_i ρ(w_i) = t`.
    pub fn express_endomorphism(&self, t: &Matrix) -> Result<Coords> {
        let n = self.dim();
        if t.rows() != n || t.cols() != n {
            return Err(Error::ShapeMismatch(format!("expected {n}x{n} endomorphism")));
        }
        match self.matrix.solve(&t.vectorize()) {
            Ok(Some(x)) => Ok(x),
            Ok(None) => Err(Error::NotInImage),
            Err(Error::ColumnRankDeficient { rank, .. }) => Err(Error::RankDeficient { rank, expected: n }),
            Err(e) => Err(e),
        }
    }

    /// Coordinates of the product `h k` in `H`, computed through `ρ`.
    pub fn hopf_product(&self, h: &[Rational], k: &[Rational]) -> Result<Coords> {
        let t = &self.rep_matrix(h)? * &self.rep_matrix(k)?;
        self.express_endomorphism(&t)
    }
}
