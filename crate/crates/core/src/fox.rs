//! Chain-level rewriting for `C₁(G) ⊗ M`.
//!
//! Chains live in `⊕_{x ∈ X} ℤ^g`, laid out generator-major: the coordinate
//! of `[x] ⊗ γᵢ` is `index(x)·g + i` (basis index `i` is 0-based here).
//!
//! A relation `x₁⋯x_k = y₁⋯y_n` yields, for each `m`, the chain
//! `Σ x₁⋯x_{j−1}[x_j] ⊗ m − Σ y₁⋯y_{j−1}[y_j] ⊗ m`, where a prefix `h` is
//! moved across the tensor as `h[x] ⊗ m = [x] ⊗ ψ(h)⁻¹m`. An inverse letter
//! uses `[x⁻¹] ⊗ m = −[x] ⊗ ψ(x)m`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::coefficients::CoefficientModule;
use crate::linalg::IntMatrix;
use crate::presentation::{GroupPresentation, Relation, Word};
use crate::representation::{MatrixRepresentation, RepresentationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoxError {
    #[error("basis index {index} out of range for module rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("representation dimension {representation} does not match rank {rank}")]
    DimensionMismatch { representation: usize, rank: usize },
    #[error(transparent)]
    Representation(#[from] RepresentationError),
}

/// An element of `⊕_{x ∈ X} ℤ^g`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChainVector {
    rank: usize,
    coords: Vec<BigInt>,
}

impl ChainVector {
    pub fn zero(num_generators: usize, rank: usize) -> Self {
        ChainVector {
            rank,
            coords: vec![BigInt::zero(); num_generators * rank],
        }
    }

    pub fn from_coords(rank: usize, coords: Vec<BigInt>) -> Self {
        assert!(rank == 0 || coords.len() % rank == 0, "length must be a multiple of the rank");
        ChainVector { rank, coords }
    }

    /// The basis chain `[x] ⊗ γᵢ`.
    pub fn basis(num_generators: usize, rank: usize, generator: usize, i: usize) -> Self {
        let mut v = Self::zero(num_generators, rank);
        v.add_term(generator, i, &BigInt::from(1));
        v
    }

    pub fn position(&self, generator: usize, i: usize) -> usize {
        debug_assert!(i < self.rank);
        generator * self.rank + i
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_generators(&self) -> usize {
        if self.rank == 0 {
            0
        } else {
            self.coords.len() / self.rank
        }
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn get(&self, generator: usize, i: usize) -> &BigInt {
        &self.coords[self.position(generator, i)]
    }

    pub fn add_term(&mut self, generator: usize, i: usize, c: &BigInt) {
        let p = self.position(generator, i);
        self.coords[p] += c;
    }

    /// Adds `c·v` into the block of `generator`.
    pub fn add_block(&mut self, generator: usize, v: &[BigInt], c: i64) {
        let base = generator * self.rank;
        for (k, x) in v.iter().enumerate() {
            if !x.is_zero() {
                self.coords[base + k] += x * c;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &ChainVector) -> ChainVector {
        assert_eq!(self.coords.len(), other.coords.len());
        ChainVector {
            rank: self.rank,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &ChainVector) -> ChainVector {
        assert_eq!(self.coords.len(), other.coords.len());
        ChainVector {
            rank: self.rank,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scaled(&self, k: i64) -> ChainVector {
        ChainVector {
            rank: self.rank,
            coords: self.coords.iter().map(|x| x * k).collect(),
        }
    }

    /// Nonzero terms as `(generator, basis index, coefficient)`.
    pub fn terms(&self) -> Vec<(usize, usize, BigInt)> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| (p / self.rank, p % self.rank, c.clone()))
            .collect()
    }
}

impl AsRef<[BigInt]> for ChainVector {
    fn as_ref(&self) -> &[BigInt] {
        &self.coords
    }
}

impl fmt::Debug for ChainVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms().iter().map(|(x, i, c)| format!("{c}·[{x}]⊗γ{}", i + 1)).collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn check_dims(rep: &MatrixRepresentation, rank: usize) -> Result<(), FoxError> {
    if rep.dimension() != rank {
        return Err(FoxError::DimensionMismatch {
            representation: rep.dimension(),
            rank,
        });
    }
    Ok(())
}

/// The `g × |X|·g` matrix of `∂̄₁`: column `(x, i)` is `(ψ(x)⁻¹ − I)·eᵢ`.
pub fn boundary_matrix(p: &GroupPresentation, rep: &MatrixRepresentation, rank: usize) -> Result<IntMatrix, FoxError> {
    check_dims(rep, rank)?;
    rep.check_covers(p)?;
    let n = p.num_generators();
    let mut d = IntMatrix::zeros(rank, n * rank);
    for x in 0..n {
        let inv = rep.inverse(x)?;
        for i in 0..rank {
            for r in 0..rank {
                let mut v = inv[(r, i)].clone();
                if r == i {
                    v -= 1;
                }
                d[(r, x * rank + i)] = v;
            }
        }
    }
    Ok(d)
}

/// Chain of one side of a relation, for every basis index at once: entry
/// `i` of the result belongs to `γᵢ`.
fn word_chains(n: usize, rep: &MatrixRepresentation, w: &Word) -> Result<Vec<ChainVector>, FoxError> {
    let g = rep.dimension();
    // Block per generator whose column i accumulates the contribution for γᵢ.
    let mut blocks: Vec<Option<IntMatrix>> = vec![None; n];
    // ψ(prefix)⁻¹
    let mut prefix_inv = IntMatrix::identity(g);
    for l in &w.letters {
        let action = rep.action(l.generator)?;
        let (term, next) = if l.inverse {
            // [x⁻¹] ⊗ m = −[x] ⊗ ψ(x) m
            let t = (&action.matrix * &prefix_inv).neg();
            let next = &action.matrix * &prefix_inv;
            (t, next)
        } else {
            let next = &action.inverse * &prefix_inv;
            (prefix_inv.clone(), next)
        };
        let slot = &mut blocks[l.generator];
        *slot = Some(match slot.take() {
            Some(acc) => acc.checked_add(&term).expect("square blocks"),
            None => term,
        });
        prefix_inv = next;
    }
    let mut out: Vec<ChainVector> = (0..g).map(|_| ChainVector::zero(n, g)).collect();
    for (x, block) in blocks.iter().enumerate() {
        if let Some(b) = block {
            for (i, chain) in out.iter_mut().enumerate() {
                chain.add_block(x, &b.column(i), 1);
            }
        }
    }
    Ok(out)
}

/// `r̄ ⊗ γᵢ` for every basis index `i`, in order.
pub fn relation_vectors_all(p: &GroupPresentation, rep: &MatrixRepresentation, r: &Relation) -> Result<Vec<ChainVector>, FoxError> {
    let n = p.num_generators();
    let lhs = word_chains(n, rep, &r.lhs)?;
    let rhs = word_chains(n, rep, &r.rhs)?;
    Ok(lhs.iter().zip(&rhs).map(|(a, b)| a.sub(b)).collect())
}

/// `r̄ ⊗ γᵢ` (LHS sum minus RHS sum), `i` 0-based.
pub fn relation_vector(p: &GroupPresentation, rep: &MatrixRepresentation, r: &Relation, i: usize) -> Result<ChainVector, FoxError> {
    let rank = rep.dimension();
    if i >= rank {
        return Err(FoxError::IndexOutOfRange { index: i, rank });
    }
    Ok(relation_vectors_all(p, rep, r)?.swap_remove(i))
}

/// `[x] ⊗ ℓ` for every generator `x` and every module relation `ℓ`
/// (generator-major order).
pub fn module_relation_vectors(p: &GroupPresentation, m: &CoefficientModule) -> Vec<ChainVector> {
    let n = p.num_generators();
    let mut out = Vec::with_capacity(n * m.relation_vectors.len());
    for x in 0..n {
        for l in &m.relation_vectors {
            let mut v = ChainVector::zero(n, m.rank);
            for (i, c) in l.iter().enumerate() {
                v.add_term(x, i, c);
            }
            out.push(v);
        }
    }
    out
}
