//! The associated order `A = { h in H : h·O_L ⊆ O_L }`.
//!
//! With `U·(M/d) = [D; 0]` the Hermite form of the action matrix, `h` lies in
//! `A` exactly when `d·D·h` is integral, so the columns of `(1/d)·D⁻¹` form a
//! basis of `A` in the coordinates of the Hopf basis.

use num::{One, Zero};

use crate::action::{ActionBundle, Coords};
use crate::error::{Error, Result};
use crate::linalg::{hnf, CoefficientRing, HnfResult, LatticeBasis, Matrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderBasis {
    bundle: ActionBundle,
    hnf: HnfResult,
    basis_in_w: Matrix,
    action_table: Vec<Vec<Coords>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderReport {
    pub integral_action: bool,
    pub contains_one: bool,
    pub ring_closed: bool,
}

impl OrderReport {
    pub fn all(&self) -> bool {
        self.integral_action && self.contains_one && self.ring_closed
    }
}

/// `{ h : m·h is integral }` for a full column rank `m`.
pub fn order_lattice_from_matrix(m: &Matrix, ring: &CoefficientRing) -> Result<LatticeBasis> {
    let h = hnf(m, ring)?;
    let basis = h.d.inverse()?.scale(&h.content.recip());
    LatticeBasis::new(basis, ring.clone())
}

pub fn associated_order(bundle: &ActionBundle) -> Result<OrderBasis> {
    let h = hnf(bundle.matrix(), bundle.ring())?;
    let basis = h.d.inverse()?.scale(&h.content.recip());
    Ok(OrderBasis::assemble(bundle.clone(), h, basis))
}

impl OrderBasis {
    fn assemble(bundle: ActionBundle, hnf: HnfResult, basis_in_w: Matrix) -> Self {
        let n = bundle.dim();
        let action_table = (0..n)
            .map(|i| {
                let e = basis_in_w.column(i);
                (0..n).map(|j| bundle.block(j).mul_vec(&e).expect("square blocks")).collect()
            })
            .collect();
        OrderBasis { bundle, hnf, basis_in_w, action_table }
    }

    /// The associated order presented in a caller-chosen basis, which must
    /// span the same lattice as the canonical one.
    pub fn with_basis(bundle: &ActionBundle, basis: Matrix) -> Result<Self> {
        let canonical = associated_order(bundle)?;
        let given = LatticeBasis::new(basis.clone(), bundle.ring().clone())?;
        if !given.lattice_equal(&canonical.lattice())? {
            return Err(Error::Validation("basis does not span the associated order".into()));
        }
        Ok(OrderBasis::assemble(bundle.clone(), canonical.hnf, basis))
    }

    /// An order of `H` contained in the associated order, given by a basis.
    pub fn sublattice(bundle: &ActionBundle, basis: Matrix) -> Result<Self> {
        let canonical = associated_order(bundle)?;
        let candidate = LatticeBasis::new(basis.clone(), bundle.ring().clone())?;
        if !canonical.lattice().includes(&candidate)? {
            return Err(Error::Validation("integral action: basis leaves the associated order".into()));
        }
        let ob = OrderBasis::assemble(bundle.clone(), canonical.hnf, basis);
        let report = ob.verify()?;
        if !report.contains_one {
            return Err(Error::Validation("unit: lattice does not contain 1".into()));
        }
        if !report.ring_closed {
            return Err(Error::Validation("closure: lattice is not closed under multiplication".into()));
        }
        Ok(ob)
    }

    pub fn bundle(&self) -> &ActionBundle {
        &self.bundle
    }

    pub fn ring(&self) -> &CoefficientRing {
        self.bundle.ring()
    }

    pub fn dim(&self) -> usize {
        self.bundle.dim()
    }

    pub fn hnf(&self) -> &HnfResult {
        &self.hnf
    }

    /// Columns are the order basis in `w`-coordinates.
    pub fn basis_in_w(&self) -> &Matrix {
        &self.basis_in_w
    }

    /// `action_table()[i][j]`: coordinates of `e_i · γ_j`.
    pub fn action_table(&self) -> &[Vec<Coords>] {
        &self.action_table
    }

    pub fn lattice(&self) -> LatticeBasis {
        LatticeBasis::new(self.basis_in_w.clone(), self.ring().clone()).expect("basis is invertible")
    }

    /// Whether `h` (in `w`-coordinates) acts integrally on `O_L`.
    pub fn acts_integrally(&self, h: &[Rational]) -> Result<bool> {
        let image = self.bundle.matrix().mul_vec(h)?;
        Ok(image.iter().all(|x| self.ring().is_integral(x)))
    }

    /// Membership in the presented order.
    pub fn contains(&self, h: &[Rational]) -> Result<bool> {
        self.lattice().contains(h)
    }

    /// Coordinates of `1 ∈ H` in the `w`-basis.
    pub fn unit_in_w(&self) -> Result<Coords> {
        self.bundle.express_endomorphism(&Matrix::identity(self.dim()))
    }

    pub fn verify(&self) -> Result<OrderReport> {
        let n = self.dim();
        let ring = self.ring();
        let integral_action = self
            .action_table
            .iter()
            .flatten()
            .flatten()
            .all(|x| ring.is_integral(x));
        let lattice = self.lattice();
        let contains_one = lattice.contains(&self.unit_in_w()?)?;
        let mut ring_closed = true;
        'outer: for a in 0..n {
            for b in 0..n {
                let p = self.bundle.hopf_product(&self.basis_in_w.column(a), &self.basis_in_w.column(b))?;
                if !lattice.contains(&p)? {
                    ring_closed = false;
                    break 'outer;
                }
            }
        }
        Ok(OrderReport { integral_action, contains_one, ring_closed })
    }

    /// Index of the span of the `w_i` in the presented lattice, up to units.
    pub fn index_of_w_span(&self) -> Result<Rational> {
        let det = self.basis_in_w.det()?;
        if det.is_zero() {
            return Err(Error::Singular);
        }
        Ok(self.ring().associate(&(Rational::one() / det)))
    }
}
