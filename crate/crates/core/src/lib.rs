//! First homology of finitely presented groups with twisted integer
//! coefficients, plus a catalog of mapping class groups of nonorientable
//! surfaces with their action on `H₁(N; ℤ)`.

pub mod catalog;
pub mod coefficients;
pub mod fox;
pub mod homology;
pub mod linalg;
pub mod presentation;
pub mod representation;

pub use catalog::{expected_h1, mcg_action, mcg_module, mcg_presentation, prop4_generators, SurfaceSpec};
pub use coefficients::{check_action_compatibility, trivial_module, CoefficientModule};
pub use fox::{boundary_matrix, module_relation_vectors, relation_vector, ChainVector};
pub use homology::{abelianization, twisted_h1, verify_kernel_generators, H1Result, HomologyError};
pub use linalg::{AbelianGroupStructure, IntMatrix, LatticeBasis};
pub use presentation::{parse_presentation, GroupPresentation, Relation, Word};
pub use representation::{verify_representation, word_matrix, MatrixRepresentation};
