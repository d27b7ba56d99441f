//! Input documents.
//!
//! ```json
//! {
//!   "ring": {"kind": "local", "prime": 3},
//!   "field": {"dim": 2, "basis": ["1", "z"], "one_index": 0,
//!             "structure_constants": [[["1","0"],["0","1"]], [["0","1"],["-1","0"]]]},
//!   "hopf": {"labels": ["1", "s"], "action": [[["1","0"],["0","1"]], [["1","0"],["0","-1"]]]}
//! }
//! ```
//!
//! `structure_constants[j][k]` holds the coordinates of `γ_j γ_k` and
//! `action[i][j]` those of `w_i · γ_j`. An optional `order_basis` lists
//! elements of the associated order in `w`-coordinates to present it in a
//! chosen basis. An optional `group` carries either a Cayley table with
//! element names (and optional `J`/`Gprime` index lists or a list of
//! `decompositions`) or a permutation action given by `generators`.

use std::path::Path;

use serde::Deserialize;

use super::CliError;
use crate::action::{ActionBundle, ActionTable, FieldPresentation};
use crate::groups::{Decomposition, GroupData, Permutation};
use crate::linalg::{parse_rational, CoefficientRing, Matrix, Rational};
use crate::order::{associated_order, OrderBasis};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub ring: Option<CoefficientRing>,
    #[serde(default)]
    pub field: Option<FieldSection>,
    #[serde(default)]
    pub hopf: Option<HopfSection>,
    #[serde(default)]
    pub order_basis: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub group: Option<GroupSection>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub one_index: usize,
    pub structure_constants: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfSection {
    pub labels: Vec<String>,
    pub action: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    #[serde(default)]
    pub order: Option<usize>,
    #[serde(default)]
    pub names: Option<Vec<String>>,
    #[serde(default)]
    pub cayley: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub degree: Option<usize>,
    #[serde(default)]
    pub generators: Option<Vec<Vec<usize>>>,
    #[serde(default, rename = "J")]
    pub j: Option<Vec<usize>>,
    #[serde(default, rename = "Gprime")]
    pub g_prime: Option<Vec<usize>>,
    #[serde(default)]
    pub decompositions: Option<Vec<Decomposition>>,
}

/// The set acted on and the generators of the normalizing group.
#[derive(Debug, Clone)]
pub enum GroupInput {
    /// `X = G` with normalizer `λ(G)`.
    Cayley { data: GroupData, decompositions: Vec<Decomposition> },
    /// `X = {0..degree-1}` with the given normalizer.
    Action { degree: usize, generators: Vec<Permutation> },
}

pub fn read_document(path: &Path) -> Result<InputDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_document(&text)
}

pub fn parse_document(text: &str) -> Result<InputDocument, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

fn rationals(path: &str, xs: &[String]) -> Result<Vec<Rational>, CliError> {
    xs.iter()
        .map(|s| parse_rational(s).map_err(|_| CliError::Validation(format!("rational: cannot parse {s:?} at {path}"))))
        .collect()
}

fn cube(path: &str, n: usize, data: &[Vec<Vec<String>>]) -> Result<Vec<Vec<Vec<Rational>>>, CliError> {
    if data.len() != n || data.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
        return Err(CliError::Validation(format!("shape: {path} must be {n}x{n}x{n}")));
    }
    data.iter()
        .enumerate()
        .map(|(i, row)| row.iter().enumerate().map(|(j, v)| rationals(&format!("{path}[{i}][{j}]"), v)).collect())
        .collect()
}

/// Parses a comma-separated coordinate list such as `0,1,-1/2`.
pub fn parse_coordinates(s: &str) -> Result<Vec<Rational>, CliError> {
    let parts: Vec<String> = s.split(',').map(|p| p.trim().to_string()).collect();
    rationals("coordinate list", &parts)
}

impl InputDocument {
    pub fn ring(&self, overriding: Option<&CoefficientRing>) -> Result<CoefficientRing, CliError> {
        let ring = overriding.cloned().or_else(|| self.ring.clone()).unwrap_or(CoefficientRing::Integers);
        ring.validate().map_err(CliError::from)?;
        Ok(ring)
    }

    pub fn field(&self) -> Result<FieldPresentation, CliError> {
        let f = self.field.as_ref().ok_or_else(|| CliError::Validation("document: missing field section".into()))?;
        if f.basis.len() != f.dim {
            return Err(CliError::Validation(format!("shape: {} basis labels for dim {}", f.basis.len(), f.dim)));
        }
        let constants = cube("field.structure_constants", f.dim, &f.structure_constants)?;
        Ok(FieldPresentation::new(f.basis.clone(), constants, f.one_index)?)
    }

    pub fn action_table(&self) -> Result<ActionTable, CliError> {
        let field = self.field()?;
        let h = self.hopf.as_ref().ok_or_else(|| CliError::Validation("document: missing hopf section".into()))?;
        let entries = cube("hopf.action", field.dim(), &h.action)?;
        Ok(ActionTable::new(h.labels.clone(), field, entries)?)
    }

    pub fn bundle(&self, ring: &CoefficientRing) -> Result<ActionBundle, CliError> {
        Ok(ActionBundle::new(self.action_table()?, ring.clone())?)
    }

    /// The associated order, in `order_basis` when one is given.
    pub fn order(&self, bundle: &ActionBundle) -> Result<OrderBasis, CliError> {
        match &self.order_basis {
            None => Ok(associated_order(bundle)?),
            Some(cols) => {
                let cols = cols
                    .iter()
                    .enumerate()
                    .map(|(i, c)| rationals(&format!("order_basis[{i}]"), c))
                    .collect::<Result<Vec<_>, _>>()?;
                if cols.len() != bundle.dim() || cols.iter().any(|c| c.len() != bundle.dim()) {
                    return Err(CliError::Validation(format!("shape: order_basis must list {} vectors", bundle.dim())));
                }
                Ok(OrderBasis::with_basis(bundle, Matrix::from_columns(&cols)?)?)
            }
        }
    }

    pub fn group(&self) -> Result<GroupInput, CliError> {
        let g = self.group.as_ref().ok_or_else(|| CliError::Validation("document: missing group section".into()))?;
        match (&g.cayley, &g.generators) {
            (Some(cayley), None) => {
                if let Some(order) = g.order {
                    if order != cayley.len() {
                        return Err(CliError::Validation(format!("shape: order {order} but {} rows", cayley.len())));
                    }
                }
                let names = g.names.clone().unwrap_or_else(|| (0..cayley.len()).map(|i| i.to_string()).collect());
                let data = GroupData::new(cayley.clone(), names, None)?;
                let mut decompositions = g.decompositions.clone().unwrap_or_default();
                match (&g.j, &g.g_prime) {
                    (Some(j), Some(gp)) => decompositions.insert(0, Decomposition { j: j.clone(), g_prime: gp.clone() }),
                    (None, None) => {}
                    _ => return Err(CliError::Validation("decomposition: J and Gprime must be given together".into())),
                }
                for d in &decompositions {
                    data.clone().with_decomposition(d.clone())?;
                }
                Ok(GroupInput::Cayley { data, decompositions })
            }
            (None, Some(gens)) => {
                let degree = g.degree.or_else(|| gens.first().map(Vec::len)).unwrap_or(0);
                let generators = gens
                    .iter()
                    .map(|p| {
                        if p.len() != degree {
                            return Err(CliError::Validation(format!("shape: generator of degree {} on {degree} points", p.len())));
                        }
                        Ok(Permutation::new(p.clone())?)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(GroupInput::Action { degree, generators })
            }
            _ => Err(CliError::Validation("group: give exactly one of cayley or generators".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUADRATIC: &str = r#"{
      "ring": {"kind": "integers"},
      "field": {"dim": 2, "basis": ["1", "z"], "one_index": 0,
                "structure_constants": [[["1","0"],["0","1"]], [["0","1"],["-1","0"]]]},
      "hopf": {"labels": ["1", "s"], "action": [[["1","0"],["0","1"]], [["1","0"],["0","-1"]]]}
    }"#;

    #[test]
    fn parses_quadratic() {
        let doc = parse_document(QUADRATIC).unwrap();
        let ring = doc.ring(None).unwrap();
        assert_eq!(ring, CoefficientRing::Integers);
        let b = doc.bundle(&ring).unwrap();
        assert_eq!(b.matrix(), &Matrix::from_ints(&[[1, 1], [0, 0], [0, 0], [1, -1]]));
        let z3 = CoefficientRing::localized(3).unwrap();
        assert_eq!(doc.ring(Some(&z3)).unwrap(), z3);
    }

    #[test]
    fn parse_errors_carry_location() {
        let truncated = &QUADRATIC[..QUADRATIC.len() / 2];
        match parse_document(truncated) {
            Err(CliError::Parse { line, .. }) => assert!(line >= 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_shapes_and_rationals() {
        let doc = parse_document(&QUADRATIC.replace(r#"["0","-1"]]]}"#, r#"["0","1/0"]]]}"#)).unwrap();
        let err = doc.action_table().unwrap_err();
        assert!(err.to_string().contains("rational"), "{err}");
        let doc = parse_document(&QUADRATIC.replace(r#""dim": 2"#, r#""dim": 3"#)).unwrap();
        assert!(doc.field().unwrap_err().to_string().contains("shape"));
        assert_eq!(parse_coordinates("0, 1/2,-3").unwrap().len(), 3);
        assert!(parse_coordinates("1,x").is_err());
    }

    #[test]
    fn group_sections() {
        let doc = parse_document(r#"{"group": {"degree": 3, "generators": [[1,2,0],[0,2,1]]}}"#).unwrap();
        assert!(matches!(doc.group().unwrap(), GroupInput::Action { degree: 3, .. }));
        let doc = parse_document(r#"{"group": {"cayley": [[0,1],[1,0]], "generators": [[1,0]]}}"#).unwrap();
        assert!(doc.group().is_err());
        let doc = parse_document(r#"{"group": {"cayley": [[0,1],[1,0]], "J": [0,1]}}"#).unwrap();
        assert!(doc.group().is_err());
    }
}
