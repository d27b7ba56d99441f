#![allow(dead_code)]

pub mod props;

use std::path::PathBuf;

use hopforders::action::ActionBundle;
use hopforders::cli::{read_document, InputDocument};
use hopforders::linalg::parse_rational;
use hopforders::order::OrderBasis;
use hopforders::{CoefficientRing, Matrix, Rational};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

pub fn document(name: &str) -> InputDocument {
    read_document(&fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn bundle_over(name: &str, ring: &CoefficientRing) -> ActionBundle {
    document(name).bundle(ring).unwrap()
}

pub fn bundle(name: &str) -> ActionBundle {
    let doc = document(name);
    doc.bundle(&doc.ring(None).unwrap()).unwrap()
}

/// The order of a fixture, in its `order_basis` when it has one.
pub fn order(name: &str) -> OrderBasis {
    let doc = document(name);
    let b = doc.bundle(&doc.ring(None).unwrap()).unwrap();
    doc.order(&b).unwrap()
}

pub fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

pub fn qs(xs: &[&str]) -> Vec<Rational> {
    xs.iter().map(|s| q(s)).collect()
}

pub fn mat(rows: &[&[&str]]) -> Matrix {
    Matrix::from_rows(rows.iter().map(|r| qs(r)).collect()).unwrap()
}

pub fn z3() -> CoefficientRing {
    CoefficientRing::localized(3).unwrap()
}
