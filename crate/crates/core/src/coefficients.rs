//! Coefficient modules `M = ℤ^rank / L` with `L` given by generators.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{LatticeBasis, LinalgError};
use crate::representation::{number_to_bigint, MatrixRepresentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("module rank {module} does not match representation dimension {representation}")]
    DimensionMismatch { module: usize, representation: usize },
    #[error("relation vector #{index} has length {found}, expected {expected}")]
    BadRelationLength { index: usize, expected: usize, found: usize },
    #[error("invalid module file: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientModule {
    pub rank: usize,
    /// Generators of `L`, kept as given.
    pub relation_vectors: Vec<Vec<BigInt>>,
    pub description: String,
}

impl CoefficientModule {
    pub fn new(rank: usize, relation_vectors: Vec<Vec<BigInt>>, description: impl Into<String>) -> Result<Self, ModuleError> {
        for (index, v) in relation_vectors.iter().enumerate() {
            if v.len() != rank {
                return Err(ModuleError::BadRelationLength {
                    index,
                    expected: rank,
                    found: v.len(),
                });
            }
        }
        Ok(CoefficientModule {
            rank,
            relation_vectors,
            description: description.into(),
        })
    }

    pub fn free(rank: usize) -> Self {
        CoefficientModule {
            rank,
            relation_vectors: Vec::new(),
            description: format!("Z^{rank}"),
        }
    }

    pub fn is_free(&self) -> bool {
        self.relation_vectors.is_empty()
    }

    /// Canonical basis of `L`.
    pub fn lattice(&self) -> LatticeBasis {
        LatticeBasis::from_generators(self.rank, &self.relation_vectors).expect("relation vectors have module rank")
    }

    pub fn to_json(&self) -> String {
        let rels: Vec<String> = self
            .relation_vectors
            .iter()
            .map(|v| {
                let cells: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("{{\n  \"rank\": {},\n  \"relations\": [{}]\n}}\n", self.rank, rels.join(", "))
    }

    pub fn from_json(text: &str) -> Result<Self, ModuleError> {
        let file: ModuleFile = serde_json::from_str(text).map_err(|e| ModuleError::Format(e.to_string()))?;
        let rels = file
            .relations
            .iter()
            .map(|r| r.iter().map(number_to_bigint).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| ModuleError::Format(e.to_string()))?;
        Self::new(file.rank, rels, "from file")
    }
}

#[derive(Serialize, Deserialize)]
struct ModuleFile {
    rank: usize,
    #[serde(default)]
    relations: Vec<Vec<serde_json::Number>>,
}

/// ℤ with no relations, meant for the rank-1 identity representation.
pub fn trivial_module() -> CoefficientModule {
    CoefficientModule {
        rank: 1,
        relation_vectors: Vec::new(),
        description: "trivial Z".into(),
    }
}

/// Whether every generator matrix and its inverse map `L` into itself.
pub fn check_action_compatibility(m: &CoefficientModule, rep: &MatrixRepresentation) -> Result<bool, ModuleError> {
    Ok(incompatible_generator(m, rep)?.is_none())
}

/// First `(generator name, relation index)` whose image leaves `L`.
pub fn incompatible_generator(m: &CoefficientModule, rep: &MatrixRepresentation) -> Result<Option<(String, usize)>, ModuleError> {
    if m.rank != rep.dimension() {
        return Err(ModuleError::DimensionMismatch {
            module: m.rank,
            representation: rep.dimension(),
        });
    }
    if m.is_free() {
        return Ok(None);
    }
    let solver = m.lattice().solver();
    for a in rep.actions() {
        for (index, l) in m.relation_vectors.iter().enumerate() {
            for mat in [&a.matrix, &a.inverse] {
                let image = mat.mul_vec(l).map_err(linalg_err)?;
                if !solver.contains(&image).map_err(linalg_err)? {
                    return Ok(Some((a.name.clone(), index)));
                }
            }
        }
    }
    Ok(None)
}

fn linalg_err(e: LinalgError) -> ModuleError {
    ModuleError::Format(e.to_string())
}
