//! Induced Hopf Galois structures.
//!
//! Given `H₁` acting on `E` (degree `r`) and `H̄` acting on `F` (degree `u`),
//! the induced structure is `H = H₁ ⊗ H̄` acting on `L = E ⊗ F` through the
//! Kronecker product of the representations. All product bases use
//! Kronecker order: left index slow, right index fast.

use crate::action::{kron_vec, ActionBundle, ActionTable, Coords};
use crate::error::{Error, Result};
use crate::freeness::{generator_matrix, search_free_generator, GeneratorCandidate, DEFAULT_SEARCH_BOUND};
use crate::groups::Permutation;
use crate::linalg::{hnf, CoefficientRing, LatticeBasis, Matrix, Rational};
use crate::order::{associated_order, OrderBasis};

/// Row permutation `P` with `P·M(H,L) = M(H₁,E) ⊗ M(H̄,F)`, as a map on
/// the `(ru)²` row indices (0-based): row `src` of `M(H,L)` moves to `dst`.
pub fn tracy_singh_permutation(r: usize, u: usize) -> Permutation {
    let n = r * u;
    let mut images = vec![0; n * n];
    for a in 0..r {
        for b in 0..r {
            for c in 0..u {
                for d in 0..u {
                    let src = n * u * b + n * d + u * a + c;
                    let dst = n * u * b + u * u * a + u * d + c;
                    images[src] = dst;
                }
            }
        }
    }
    Permutation::new(images).expect("index law is a bijection")
}

/// Moves row `i` to row `p(i)`.
pub fn permute_rows(p: &Permutation, m: &Matrix) -> Result<Matrix> {
    if p.degree() != m.rows() {
        return Err(Error::DimensionMismatch { expected: m.rows(), found: p.degree() });
    }
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        let dst = p.apply(i);
        for j in 0..m.cols() {
            out[(dst, j)] = m[(i, j)].clone();
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSetup {
    left: ActionBundle,
    right: ActionBundle,
    induced: ActionBundle,
    permutation: Permutation,
    left_order: OrderBasis,
    right_order: OrderBasis,
}

pub fn induce_action(left: &ActionBundle, right: &ActionBundle) -> Result<InducedSetup> {
    let left_order = associated_order(left)?;
    let right_order = associated_order(right)?;
    InducedSetup::with_factor_orders(left_order, right_order)
}

impl InducedSetup {
    /// Builds the induced structure keeping the given bases of the factor
    /// orders; their Kronecker product is the basis used for the induced order.
    pub fn with_factor_orders(left_order: OrderBasis, right_order: OrderBasis) -> Result<Self> {
        let left = left_order.bundle().clone();
        let right = right_order.bundle().clone();
        if left.ring() != right.ring() {
            return Err(Error::Validation("factors are defined over different rings".into()));
        }
        for (name, b) in [("left", &left), ("right", &right)] {
            let report = b.verify();
            if !report.rank_ok || !report.j_bijective {
                return Err(Error::Validation(format!("{name} factor is not a Hopf Galois action")));
            }
        }
        let table = left.table().tensor(right.table());
        let induced = ActionBundle::new(table, left.ring().clone())?;
        let permutation = tracy_singh_permutation(left.dim(), right.dim());
        Ok(InducedSetup { left, right, induced, permutation, left_order, right_order })
    }

    /// Same factors with the induced table replaced.
    pub fn with_induced_table(&self, table: ActionTable) -> Result<Self> {
        let mut s = self.clone();
        s.induced = ActionBundle::new(table, self.ring().clone())?;
        Ok(s)
    }

    pub fn left(&self) -> &ActionBundle {
        &self.left
    }

    pub fn right(&self) -> &ActionBundle {
        &self.right
    }

    pub fn induced(&self) -> &ActionBundle {
        &self.induced
    }

    pub fn permutation(&self) -> &Permutation {
        &self.permutation
    }

    pub fn left_order(&self) -> &OrderBasis {
        &self.left_order
    }

    pub fn right_order(&self) -> &OrderBasis {
        &self.right_order
    }

    pub fn ring(&self) -> &CoefficientRing {
        self.left.ring()
    }

    /// `(r, u)`.
    pub fn degrees(&self) -> (usize, usize) {
        (self.left.dim(), self.right.dim())
    }

    /// Kronecker product of the two factor order bases.
    pub fn product_order_basis(&self) -> Matrix {
        self.left_order.basis_in_w().kronecker(self.right_order.basis_in_w())
    }

    pub fn is_disjoint(&self) -> Result<bool> {
        are_arithmetically_disjoint(self.left.field(), self.right.field(), self.ring())
    }

    fn require_disjoint(&self) -> Result<()> {
        if self.is_disjoint()? {
            Ok(())
        } else {
            Err(Error::NotArithmeticallyDisjoint)
        }
    }
}

pub fn verify_kronecker_theorem(setup: &InducedSetup) -> Result<bool> {
    let lhs = permute_rows(setup.permutation(), setup.induced().matrix())?;
    Ok(lhs == setup.left().matrix().kronecker(setup.right().matrix()))
}

/// Discriminants of the two integral bases generate the unit ideal.
pub fn are_arithmetically_disjoint(
    left: &crate::action::FieldPresentation,
    right: &crate::action::FieldPresentation,
    ring: &CoefficientRing,
) -> Result<bool> {
    let d1 = left.discriminant()?;
    let d2 = right.discriminant()?;
    Ok(match ring {
        CoefficientRing::Integers => {
            use num::Integer;
            if !d1.is_integer() || !d2.is_integer() {
                return Err(Error::Validation("integrality: discriminant is not an integer".into()));
            }
            d1.numer().gcd(d2.numer()) == num::One::one()
        }
        CoefficientRing::LocalizedAtPrime { .. } => ring.valuation(&d1) == Some(0) || ring.valuation(&d2) == Some(0),
    })
}

/// `d_M` against `d₁·d̄`, as the three contents and the unit verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContentFactorization {
    pub induced: Rational,
    pub left: Rational,
    pub right: Rational,
    pub equal_up_to_unit: bool,
}

pub fn content_factorization(setup: &InducedSetup) -> Result<ContentFactorization> {
    let ring = setup.ring();
    let c = |m: &Matrix| ring.content(m.entries()).ok_or(Error::ZeroMatrix);
    let induced = c(setup.induced().matrix())?;
    let left = c(setup.left().matrix())?;
    let right = c(setup.right().matrix())?;
    let equal_up_to_unit = ring.is_unit(&(&induced / (&left * &right)));
    Ok(ContentFactorization { induced, left, right, equal_up_to_unit })
}

/// Whether the Hermite form of `M(H,L)` and `D₁ ⊗ D̄` define the same lattice.
pub fn hnf_factor_identity(setup: &InducedSetup) -> Result<bool> {
    let ring = setup.ring();
    let d = hnf(setup.induced().matrix(), ring)?.d;
    let d1 = hnf(setup.left().matrix(), ring)?.d;
    let d2 = hnf(setup.right().matrix(), ring)?.d;
    let a = LatticeBasis::new(d.inverse()?, ring.clone())?;
    let b = LatticeBasis::new(d1.kronecker(&d2).inverse()?, ring.clone())?;
    a.lattice_equal(&b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorOrderComparison {
    pub induced_order: OrderBasis,
    pub product_basis: Matrix,
    pub equal: bool,
}

/// Computes both sides of the tensor-order identity without checking its
/// hypothesis.
pub fn compare_tensor_order(setup: &InducedSetup) -> Result<TensorOrderComparison> {
    let induced_order = associated_order(setup.induced())?;
    let product_basis = setup.product_order_basis();
    let product = LatticeBasis::new(product_basis.clone(), setup.ring().clone())?;
    let equal = induced_order.lattice().lattice_equal(&product)?;
    Ok(TensorOrderComparison { induced_order, product_basis, equal })
}

pub fn verify_tensor_order(setup: &InducedSetup) -> Result<bool> {
    setup.require_disjoint()?;
    Ok(compare_tensor_order(setup)?.equal)
}

/// The induced order presented in the Kronecker basis of the factor orders.
pub fn induced_order_in_product_basis(setup: &InducedSetup) -> Result<OrderBasis> {
    setup.require_disjoint()?;
    OrderBasis::with_basis(setup.induced(), setup.product_order_basis())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedGeneratorReport {
    pub free: bool,
    pub product_beta: Coords,
    pub det: Rational,
    pub d_gamma_delta: Matrix,
    pub kronecker_consistent: bool,
}

pub fn verify_induced_generator(setup: &InducedSetup, gamma: &[Rational], delta: &[Rational]) -> Result<InducedGeneratorReport> {
    let order = induced_order_in_product_basis(setup)?;
    let dg = generator_matrix(setup.left_order(), gamma)?;
    let dd = generator_matrix(setup.right_order(), delta)?;
    let product_beta = kron_vec(gamma, delta);
    let c = generator_matrix(&order, &product_beta)?;
    let kronecker_consistent = c.d_beta == dg.d_beta.kronecker(&dd.d_beta);
    Ok(InducedGeneratorReport {
        free: setup.ring().is_unit(&c.det),
        product_beta,
        det: c.det,
        d_gamma_delta: c.d_beta,
        kronecker_consistent,
    })
}

/// `H₁ ⊗ F` acting on `L` with basis `w_i z_l`:
/// `(w_i z_l)·(α_k z_m) = (w_i·α_k)(z_l z_m)`.
pub fn base_change_table(setup: &InducedSetup) -> Result<ActionTable> {
    let left = setup.left().table();
    let f = setup.right().field();
    let field = left.field().tensor(f);
    let (r, u) = setup.degrees();
    let mut entries = vec![vec![Vec::new(); r * u]; r * u];
    for i in 0..r {
        for l in 0..u {
            for k in 0..r {
                for m in 0..u {
                    entries[i * u + l][k * u + m] = kron_vec(&left.entries()[i][k], &f.constants()[l][m]);
                }
            }
        }
    }
    let labels = left
        .hopf_labels()
        .iter()
        .flat_map(|w| f.labels().iter().map(move |z| format!("{w}*{z}")))
        .collect();
    ActionTable::new(labels, field, entries)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseChangeReport {
    pub order: OrderBasis,
    pub lattice_eq: bool,
    pub gamma: Option<Coords>,
    pub gamma_free: Option<bool>,
    pub generator: Option<GeneratorCandidate>,
}

/// Compares the associated lattice of `H₁ ⊗ F` with `𝔄_{H₁} ⊗ O_F`. When no
/// `gamma` is given, a free generator of `O_E` is searched for first.
pub fn base_change_order(setup: &InducedSetup, gamma: Option<&[Rational]>) -> Result<BaseChangeReport> {
    setup.require_disjoint()?;
    let bundle = ActionBundle::new(base_change_table(setup)?, setup.ring().clone())?;
    let order = associated_order(&bundle)?;
    let u = setup.right().dim();
    let expected = setup.left_order().basis_in_w().kronecker(&Matrix::identity(u));
    let lattice_eq = order.lattice().lattice_equal(&LatticeBasis::new(expected.clone(), setup.ring().clone())?)?;
    let gamma = match gamma {
        Some(g) => Some(g.to_vec()),
        None => search_free_generator(setup.left_order(), DEFAULT_SEARCH_BOUND)?.generator.map(|c| c.beta),
    };
    let (gamma_free, generator) = match &gamma {
        Some(g) => {
            let one = setup.right().field().one();
            let lifted = kron_vec(g, &one);
            let presented = if lattice_eq { OrderBasis::with_basis(&bundle, expected)? } else { order.clone() };
            let c = generator_matrix(&presented, &lifted)?;
            (Some(setup.ring().is_unit(&c.det)), Some(c))
        }
        None => (None, None),
    };
    Ok(BaseChangeReport { order, lattice_eq, gamma, gamma_free, generator })
}
