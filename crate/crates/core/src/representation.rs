//! Integer matrix representations of presented groups.
//!
//! Vectors are coordinate columns and matrices act on the left. A word
//! `x₁x₂⋯x_k` is sent to the product `ψ(x₁)ψ(x₂)⋯ψ(x_k)`; an inverse letter
//! uses the stored inverse matrix.

use indexmap::IndexMap;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{is_unimodular, unimodular_inverse, IntMatrix, LatticeBasis, LatticeSolver, LinalgError};
use crate::presentation::{GroupPresentation, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepresentationError {
    #[error("unknown generator #{0}")]
    UnknownGenerator(usize),
    #[error("generator `{0}` is not part of the presentation")]
    UnexpectedGenerator(String),
    #[error("no matrix given for generator `{0}`")]
    MissingGenerator(String),
    #[error("generator #{index} is `{found}` in the representation but `{expected}` in the presentation")]
    GeneratorMismatch {
        index: usize,
        expected: String,
        found: String,
    },
    #[error("matrix for `{generator}` has shape {rows}x{cols}, expected {dim}x{dim}")]
    BadShape {
        generator: String,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("matrix for `{0}` is not unimodular")]
    NotUnimodular(String),
    #[error("stored inverse for `{0}` does not invert its matrix")]
    BadInverse(String),
    #[error("vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid representation file: {0}")]
    Format(String),
}

impl From<LinalgError> for RepresentationError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::DimensionMismatch { expected, found } => RepresentationError::DimensionMismatch { expected, found },
            other => RepresentationError::Format(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorAction {
    pub name: String,
    pub matrix: IntMatrix,
    pub inverse: IntMatrix,
}

/// Per-generator invertible integer matrices, indexed like the generators
/// of the presentation they belong to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRepresentation {
    dimension: usize,
    actions: Vec<GeneratorAction>,
}

impl MatrixRepresentation {
    /// Builds a representation from matrices with known inverses. Every
    /// `matrix · inverse` product is checked.
    pub fn with_inverses(dimension: usize, entries: Vec<(String, IntMatrix, IntMatrix)>) -> Result<Self, RepresentationError> {
        let mut actions = Vec::with_capacity(entries.len());
        for (name, matrix, inverse) in entries {
            check_shape(&name, &matrix, dimension)?;
            check_shape(&name, &inverse, dimension)?;
            if !(&matrix * &inverse).is_identity() || !(&inverse * &matrix).is_identity() {
                return Err(RepresentationError::BadInverse(name));
            }
            actions.push(GeneratorAction { name, matrix, inverse });
        }
        Ok(MatrixRepresentation { dimension, actions })
    }

    /// Builds a representation, computing exact inverses. Fails if any
    /// matrix is not unimodular.
    pub fn from_matrices(dimension: usize, entries: Vec<(String, IntMatrix)>) -> Result<Self, RepresentationError> {
        let mut full = Vec::with_capacity(entries.len());
        for (name, matrix) in entries {
            check_shape(&name, &matrix, dimension)?;
            let inverse = unimodular_inverse(&matrix).ok_or_else(|| RepresentationError::NotUnimodular(name.clone()))?;
            full.push((name, matrix, inverse));
        }
        Self::with_inverses(dimension, full)
    }

    /// Every generator acts as the identity.
    pub fn trivial<S: AsRef<str>>(names: &[S], dimension: usize) -> Self {
        MatrixRepresentation {
            dimension,
            actions: names
                .iter()
                .map(|n| GeneratorAction {
                    name: n.as_ref().to_string(),
                    matrix: IntMatrix::identity(dimension),
                    inverse: IntMatrix::identity(dimension),
                })
                .collect(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn num_generators(&self) -> usize {
        self.actions.len()
    }

    pub fn actions(&self) -> &[GeneratorAction] {
        &self.actions
    }

    pub fn action(&self, generator: usize) -> Result<&GeneratorAction, RepresentationError> {
        self.actions.get(generator).ok_or(RepresentationError::UnknownGenerator(generator))
    }

    pub fn matrix(&self, generator: usize) -> Result<&IntMatrix, RepresentationError> {
        Ok(&self.action(generator)?.matrix)
    }

    pub fn inverse(&self, generator: usize) -> Result<&IntMatrix, RepresentationError> {
        Ok(&self.action(generator)?.inverse)
    }

    /// Reorders a name-keyed representation to match the generator order
    /// of `p`.
    pub fn aligned_to(mut self, p: &GroupPresentation) -> Result<Self, RepresentationError> {
        if let Some(extra) = self.actions.iter().find(|a| p.generator_index(&a.name).is_none()) {
            return Err(RepresentationError::UnexpectedGenerator(extra.name.clone()));
        }
        let mut aligned = Vec::with_capacity(p.num_generators());
        for g in &p.generators {
            let pos = self
                .actions
                .iter()
                .position(|a| a.name == g.name)
                .ok_or_else(|| RepresentationError::MissingGenerator(g.name.clone()))?;
            aligned.push(self.actions.swap_remove(pos));
        }
        Ok(MatrixRepresentation {
            dimension: self.dimension,
            actions: aligned,
        })
    }

    /// Checks that the representation is indexed exactly like `p`.
    pub fn check_covers(&self, p: &GroupPresentation) -> Result<(), RepresentationError> {
        for (index, g) in p.generators.iter().enumerate() {
            let found = self
                .actions
                .get(index)
                .ok_or_else(|| RepresentationError::MissingGenerator(g.name.clone()))?;
            if found.name != g.name {
                return Err(RepresentationError::GeneratorMismatch {
                    index,
                    expected: g.name.clone(),
                    found: found.name.clone(),
                });
            }
        }
        if let Some(extra) = self.actions.get(p.num_generators()) {
            return Err(RepresentationError::UnexpectedGenerator(extra.name.clone()));
        }
        Ok(())
    }

    /// Conjugates every generator by `p`: `ψ'(x) = P ψ(x) P⁻¹`.
    pub fn conjugated(&self, p: &IntMatrix) -> Result<Self, RepresentationError> {
        let p_inv = unimodular_inverse(p).ok_or_else(|| RepresentationError::NotUnimodular("change of basis".into()))?;
        Ok(MatrixRepresentation {
            dimension: self.dimension,
            actions: self
                .actions
                .iter()
                .map(|a| GeneratorAction {
                    name: a.name.clone(),
                    matrix: &(p * &a.matrix) * &p_inv,
                    inverse: &(p * &a.inverse) * &p_inv,
                })
                .collect(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n");
        out.push_str(&format!("  \"dimension\": {},\n", self.dimension));
        out.push_str("  \"generators\": {");
        for (i, a) in self.actions.iter().enumerate() {
            out.push_str(if i == 0 { "\n" } else { ",\n" });
            let rows: Vec<String> = (0..a.matrix.rows())
                .map(|r| {
                    let cells: Vec<String> = a.matrix.row(r).iter().map(|x| x.to_string()).collect();
                    format!("[{}]", cells.join(", "))
                })
                .collect();
            out.push_str(&format!(
                "    {}: {{\"matrix\": [{}]}}",
                serde_json::to_string(&a.name).expect("string serializes"),
                rows.join(", ")
            ));
        }
        if !self.actions.is_empty() {
            out.push_str("\n  ");
        }
        out.push_str("}\n}\n");
        out
    }

    /// Reads the JSON representation format. Inverses are computed and
    /// checked; generators keep file order (see [`Self::aligned_to`]).
    pub fn from_json(text: &str) -> Result<Self, RepresentationError> {
        let file: RepresentationFile = serde_json::from_str(text).map_err(|e| RepresentationError::Format(e.to_string()))?;
        let mut entries = Vec::with_capacity(file.generators.len());
        for (name, entry) in file.generators {
            let rows = entry
                .matrix
                .iter()
                .map(|row| row.iter().map(number_to_bigint).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            if rows.iter().any(|r| r.len() != file.dimension) {
                return Err(RepresentationError::BadShape {
                    generator: name,
                    rows: rows.len(),
                    cols: rows.first().map_or(0, Vec::len),
                    dim: file.dimension,
                });
            }
            entries.push((name, IntMatrix::from_rows_with_cols(&rows, file.dimension)));
        }
        Self::from_matrices(file.dimension, entries)
    }
}

#[derive(Serialize, Deserialize)]
struct RepresentationFile {
    dimension: usize,
    generators: IndexMap<String, GeneratorEntry>,
}

#[derive(Serialize, Deserialize)]
struct GeneratorEntry {
    matrix: Vec<Vec<serde_json::Number>>,
}

pub(crate) fn number_to_bigint(n: &serde_json::Number) -> Result<BigInt, RepresentationError> {
    let s = n.to_string();
    s.parse::<BigInt>()
        .map_err(|_| RepresentationError::Format(format!("`{s}` is not an integer")))
}

fn check_shape(name: &str, m: &IntMatrix, dim: usize) -> Result<(), RepresentationError> {
    if m.rows() != dim || m.cols() != dim {
        return Err(RepresentationError::BadShape {
            generator: name.to_string(),
            rows: m.rows(),
            cols: m.cols(),
            dim,
        });
    }
    Ok(())
}

/// `ψ(w)`; the empty word maps to the identity.
pub fn word_matrix(rep: &MatrixRepresentation, w: &Word) -> Result<IntMatrix, RepresentationError> {
    let mut acc = IntMatrix::identity(rep.dimension);
    for l in &w.letters {
        let a = rep.action(l.generator)?;
        let m = if l.inverse { &a.inverse } else { &a.matrix };
        acc = &acc * m;
    }
    Ok(acc)
}

/// `ψ(w)⁻¹`, built from stored inverses.
pub fn word_matrix_inverse(rep: &MatrixRepresentation, w: &Word) -> Result<IntMatrix, RepresentationError> {
    let mut acc = IntMatrix::identity(rep.dimension);
    for l in w.letters.iter().rev() {
        let a = rep.action(l.generator)?;
        let m = if l.inverse { &a.matrix } else { &a.inverse };
        acc = &acc * m;
    }
    Ok(acc)
}

/// `ψ(w)·v`.
pub fn act(rep: &MatrixRepresentation, w: &Word, v: &[BigInt]) -> Result<Vec<BigInt>, RepresentationError> {
    if v.len() != rep.dimension {
        return Err(RepresentationError::DimensionMismatch {
            expected: rep.dimension,
            found: v.len(),
        });
    }
    // Apply right-to-left to stay matrix-vector.
    let mut out = v.to_vec();
    for l in w.letters.iter().rev() {
        let a = rep.action(l.generator)?;
        let m = if l.inverse { &a.inverse } else { &a.matrix };
        out = m.mul_vec(&out)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub index: usize,
    pub label: Option<String>,
    /// `ψ(lhs) = ψ(rhs)` as integer matrices.
    pub exact: bool,
    /// `ψ(lhs) − ψ(rhs)` maps into the relation lattice, i.e. the two sides
    /// agree as automorphisms of the quotient module. Equal to `exact` when
    /// the lattice is zero.
    pub in_module: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorCheck {
    pub name: String,
    pub inverse_ok: bool,
    pub unimodular: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepReport {
    pub relations: Vec<RelationCheck>,
    pub generators: Vec<GeneratorCheck>,
    pub passed: bool,
}

impl RepReport {
    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.relations.iter().filter(|r| !r.in_module)
    }

    pub fn exact_failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.relations.iter().filter(|r| !r.exact)
    }
}

/// Checks every relation of `p` under `rep` as an equality of integer
/// matrices, plus the stored inverses.
pub fn verify_representation(p: &GroupPresentation, rep: &MatrixRepresentation) -> Result<RepReport, RepresentationError> {
    verify_representation_modulo(p, rep, &LatticeBasis::empty(rep.dimension))
}

/// Like [`verify_representation`], but a relation passes when the two sides
/// agree modulo `lattice` (every column of their difference lies in it).
pub fn verify_representation_modulo(
    p: &GroupPresentation,
    rep: &MatrixRepresentation,
    lattice: &LatticeBasis,
) -> Result<RepReport, RepresentationError> {
    rep.check_covers(p)?;
    if lattice.ambient_dim() != rep.dimension {
        return Err(RepresentationError::DimensionMismatch {
            expected: rep.dimension,
            found: lattice.ambient_dim(),
        });
    }
    let solver = lattice.solver();
    let mut relations = Vec::with_capacity(p.relations.len());
    for (index, r) in p.relations.iter().enumerate() {
        let lhs = word_matrix(rep, &r.lhs)?;
        let rhs = word_matrix(rep, &r.rhs)?;
        let exact = lhs == rhs;
        let in_module = exact || columns_in(&solver, &lhs.checked_sub(&rhs)?)?;
        relations.push(RelationCheck {
            index,
            label: r.label.clone(),
            exact,
            in_module,
        });
    }
    let generators: Vec<GeneratorCheck> = rep
        .actions
        .iter()
        .map(|a| GeneratorCheck {
            name: a.name.clone(),
            inverse_ok: (&a.matrix * &a.inverse).is_identity() && (&a.inverse * &a.matrix).is_identity(),
            unimodular: is_unimodular(&a.matrix),
        })
        .collect();
    let passed = relations.iter().all(|r| r.in_module) && generators.iter().all(|g| g.inverse_ok && g.unimodular);
    Ok(RepReport {
        relations,
        generators,
        passed,
    })
}

fn columns_in(solver: &LatticeSolver, m: &IntMatrix) -> Result<bool, RepresentationError> {
    for c in 0..m.cols() {
        if !solver.contains(&m.column(c))? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;
    use crate::presentation::{parse_presentation, Letter};

    fn braid_rep() -> (GroupPresentation, MatrixRepresentation) {
        // Burau-like integer action of the 3-strand braid group on ℤ².
        let p = parse_presentation("gen s t\nrel s t s = t s t").unwrap();
        let s = IntMatrix::from_rows(&[[1i64, 1], [0, 1]]);
        let t = IntMatrix::from_rows(&[[1i64, 0], [-1, 1]]);
        let rep = MatrixRepresentation::from_matrices(2, vec![("s".into(), s), ("t".into(), t)]).unwrap();
        (p, rep)
    }

    #[test]
    fn empty_word_is_identity() {
        let (_, rep) = braid_rep();
        assert!(word_matrix(&rep, &Word::identity()).unwrap().is_identity());
        let v = int_vec(&[3, -4]);
        assert_eq!(act(&rep, &Word::identity(), &v).unwrap(), v);
    }

    #[test]
    fn act_agrees_with_word_matrix() {
        let (_, rep) = braid_rep();
        let w = Word::new(vec![Letter::pos(0), Letter::neg(1), Letter::pos(0)]);
        let v = int_vec(&[2, 5]);
        let m = word_matrix(&rep, &w).unwrap();
        assert_eq!(act(&rep, &w, &v).unwrap(), m.mul_vec(&v).unwrap());
        let inv = word_matrix_inverse(&rep, &w).unwrap();
        assert!((&m * &inv).is_identity());
    }

    #[test]
    fn verifies_braid_relation_and_detects_perturbation() {
        let (p, rep) = braid_rep();
        assert!(verify_representation(&p, &rep).unwrap().passed);
        let bad_s = IntMatrix::from_rows(&[[1i64, 2], [0, 1]]);
        let t = rep.matrix(1).unwrap().clone();
        let bad = MatrixRepresentation::from_matrices(2, vec![("s".into(), bad_s), ("t".into(), t)]).unwrap();
        let report = verify_representation(&p, &bad).unwrap();
        assert!(!report.passed);
        assert_eq!(report.failures().count(), 1);
    }

    #[test]
    fn rejects_non_unimodular_and_bad_inverse() {
        let m = IntMatrix::diagonal_matrix(&[2, 1]);
        assert_eq!(
            MatrixRepresentation::from_matrices(2, vec![("x".into(), m.clone())]).unwrap_err(),
            RepresentationError::NotUnimodular("x".into())
        );
        assert_eq!(
            MatrixRepresentation::with_inverses(2, vec![("x".into(), IntMatrix::identity(2), m)]).unwrap_err(),
            RepresentationError::BadInverse("x".into())
        );
    }

    #[test]
    fn unknown_generator_is_an_error() {
        let (_, rep) = braid_rep();
        let w = Word::from_generators(&[7]);
        assert_eq!(word_matrix(&rep, &w).unwrap_err(), RepresentationError::UnknownGenerator(7));
        assert!(matches!(
            act(&rep, &Word::identity(), &int_vec(&[1])),
            Err(RepresentationError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn json_round_trip_and_alignment() {
        let (p, rep) = braid_rep();
        let text = rep.to_json();
        let back = MatrixRepresentation::from_json(&text).unwrap().aligned_to(&p).unwrap();
        assert_eq!(back, rep);
        let swapped = r#"{"dimension": 2, "generators": {"t": {"matrix": [[1,0],[-1,1]]}, "s": {"matrix": [[1,1],[0,1]]}}}"#;
        let aligned = MatrixRepresentation::from_json(swapped).unwrap().aligned_to(&p).unwrap();
        assert_eq!(aligned, rep);
    }

    #[test]
    fn json_rejects_bad_input() {
        let singular = r#"{"dimension": 1, "generators": {"s": {"matrix": [[2]]}}}"#;
        assert!(matches!(
            MatrixRepresentation::from_json(singular),
            Err(RepresentationError::NotUnimodular(_))
        ));
        let frac = r#"{"dimension": 1, "generators": {"s": {"matrix": [[1.5]]}}}"#;
        assert!(matches!(MatrixRepresentation::from_json(frac), Err(RepresentationError::Format(_))));
        let shape = r#"{"dimension": 2, "generators": {"s": {"matrix": [[1]]}}}"#;
        assert!(matches!(MatrixRepresentation::from_json(shape), Err(RepresentationError::BadShape { .. })));
        let (p, _) = braid_rep();
        let missing = r#"{"dimension": 2, "generators": {"s": {"matrix": [[1,0],[0,1]]}}}"#;
        assert_eq!(
            MatrixRepresentation::from_json(missing).unwrap().aligned_to(&p).unwrap_err(),
            RepresentationError::MissingGenerator("t".into())
        );
    }

    #[test]
    fn big_entries_survive_json() {
        let text = r#"{"dimension": 2, "generators": {"s": {"matrix": [[1, 123456789012345678901234567890],[0,1]]}}}"#;
        let rep = MatrixRepresentation::from_json(text).unwrap();
        assert_eq!(
            rep.matrix(0).unwrap()[(0, 1)],
            "123456789012345678901234567890".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn modulo_check_accepts_lattice_differences() {
        // ⟨x | x = 1⟩ with ψ(x) = [[1, 2], [0, 1]] fails over ℤ² but holds on ℤ²/⟨(2, 0)⟩.
        let p = parse_presentation("gen x\nrel x =").unwrap();
        let rep = MatrixRepresentation::from_matrices(2, vec![("x".into(), IntMatrix::from_rows(&[[1i64, 2], [0, 1]]))]).unwrap();
        let exact = verify_representation(&p, &rep).unwrap();
        assert!(!exact.passed);
        let lattice = LatticeBasis::from_generators(2, &[int_vec(&[2, 0])]).unwrap();
        let modulo = verify_representation_modulo(&p, &rep, &lattice).unwrap();
        assert!(modulo.passed);
        assert_eq!(modulo.exact_failures().count(), 1);
    }
}
