//! `H₁(G; M)` for a presented group acting on a coefficient module.
//!
//! The cycles are the lattice `K = {v ∈ ⊕ₓ ℤ^g : ∂̄₁v ∈ L}` and the
//! boundaries are spanned by the relation chains together with `[x] ⊗ ℓ`
//! for the module relations `ℓ`; the result is `K / ⟨S⟩`.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use thiserror::Error;

use crate::coefficients::{incompatible_generator, CoefficientModule, ModuleError};
use crate::fox::{boundary_matrix, module_relation_vectors, relation_vectors_all, ChainVector, FoxError};
use crate::linalg::{
    kernel, lattice_equal, quotient_invariants, rank, smith_invariants, AbelianGroupStructure, IntMatrix, LatticeBasis,
    LinalgError,
};
use crate::presentation::{validate, GroupPresentation};
use crate::representation::{verify_representation_modulo, MatrixRepresentation, RepresentationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("representation does not respect relation {relation}")]
    RepresentationInvalid { relation: String },
    #[error("action of `{generator}` does not preserve module relation #{relation}")]
    ModuleIncompatible { generator: String, relation: usize },
    #[error("chain of relation {relation} (basis index {basis}) is not a cycle")]
    CycleViolation { relation: String, basis: usize },
    #[error("cycle lattice failed its saturation check")]
    Saturation,
    #[error(transparent)]
    Representation(#[from] RepresentationError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Fox(#[from] FoxError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub num_generators: usize,
    pub num_relations: usize,
    pub chain_dim: usize,
    pub module_relation_vectors: usize,
    pub timings: Vec<(&'static str, Duration)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Result {
    pub invariants: AbelianGroupStructure,
    pub kernel_rank: usize,
    pub num_relation_vectors: usize,
    pub diagnostics: Diagnostics,
}

fn relation_name(p: &GroupPresentation, index: usize) -> String {
    p.relations[index].label.clone().unwrap_or_else(|| format!("#{index}"))
}

/// Checks the preconditions shared by [`twisted_h1`] and
/// [`verify_kernel_generators`].
fn check_inputs(p: &GroupPresentation, rep: &MatrixRepresentation, m: &CoefficientModule) -> Result<(), HomologyError> {
    let issues = validate(p);
    if let Some(first) = issues.first() {
        return Err(HomologyError::InvalidPresentation(first.to_string()));
    }
    rep.check_covers(p)?;
    if let Some((generator, relation)) = incompatible_generator(m, rep)? {
        return Err(HomologyError::ModuleIncompatible { generator, relation });
    }
    let report = verify_representation_modulo(p, rep, &m.lattice())?;
    if let Some(bad) = report.failures().next() {
        return Err(HomologyError::RepresentationInvalid {
            relation: relation_name(p, bad.index),
        });
    }
    if let Some(bad) = report.generators.iter().find(|g| !g.inverse_ok || !g.unimodular) {
        return Err(RepresentationError::BadInverse(bad.name.clone()).into());
    }
    Ok(())
}

/// `{v ∈ ℤⁿ : D·v ∈ L}` where `L` is spanned by `l_gens`.
pub fn preimage_lattice(d: &IntMatrix, l_gens: &[Vec<BigInt>]) -> Result<LatticeBasis, HomologyError> {
    let n = d.cols();
    let l = IntMatrix::from_columns(d.rows(), l_gens).neg();
    let stacked = d.hstack(&l)?;
    let full = kernel(&stacked);
    let projected: Vec<Vec<BigInt>> = full.vectors().into_iter().map(|mut v| {
        v.truncate(n);
        v
    }).collect();
    let k = LatticeBasis::from_generators(n, &projected)?;

    // Saturation: every basis vector must map into L.
    let l_lattice = LatticeBasis::from_generators(d.rows(), l_gens)?;
    let solver = l_lattice.solver();
    for v in k.vectors() {
        if !solver.contains(&d.mul_vec(&v)?)? {
            return Err(HomologyError::Saturation);
        }
    }
    Ok(k)
}

/// The cycle lattice `K` of `⊕ₓ M`.
pub fn cycle_lattice(p: &GroupPresentation, rep: &MatrixRepresentation, m: &CoefficientModule) -> Result<LatticeBasis, HomologyError> {
    let d = boundary_matrix(p, rep, m.rank)?;
    preimage_lattice(&d, &m.relation_vectors)
}

/// All relation chains (every relation, every basis index) followed by the
/// module relation chains, with the provenance of each relation chain.
pub fn boundary_generators(
    p: &GroupPresentation,
    rep: &MatrixRepresentation,
    m: &CoefficientModule,
) -> Result<(Vec<ChainVector>, Vec<(usize, usize)>), HomologyError> {
    let mut chains = Vec::with_capacity(p.relations.len() * m.rank);
    let mut origin = Vec::with_capacity(chains.capacity());
    for (ri, r) in p.relations.iter().enumerate() {
        for (i, v) in relation_vectors_all(p, rep, r)?.into_iter().enumerate() {
            chains.push(v);
            origin.push((ri, i));
        }
    }
    chains.extend(module_relation_vectors(p, m));
    Ok((chains, origin))
}

pub fn twisted_h1(p: &GroupPresentation, rep: &MatrixRepresentation, m: &CoefficientModule) -> Result<H1Result, HomologyError> {
    let mut timings = Vec::new();
    let t0 = Instant::now();
    check_inputs(p, rep, m)?;
    timings.push(("verify", t0.elapsed()));

    let t1 = Instant::now();
    let k = cycle_lattice(p, rep, m)?;
    timings.push(("cycles", t1.elapsed()));

    let t2 = Instant::now();
    let (s, origin) = boundary_generators(p, rep, m)?;
    timings.push(("relations", t2.elapsed()));

    let t3 = Instant::now();
    let invariants = quotient_invariants(&k, &s).map_err(|e| match e {
        LinalgError::SubgroupNotContained { index } if index < origin.len() => {
            let (ri, basis) = origin[index];
            HomologyError::CycleViolation {
                relation: relation_name(p, ri),
                basis,
            }
        }
        LinalgError::SubgroupNotContained { .. } => HomologyError::CycleViolation {
            relation: "module relation".into(),
            basis: 0,
        },
        other => other.into(),
    })?;
    timings.push(("quotient", t3.elapsed()));

    let n_module = s.len() - origin.len();
    Ok(H1Result {
        invariants,
        kernel_rank: k.rank(),
        num_relation_vectors: s.len(),
        diagnostics: Diagnostics {
            num_generators: p.num_generators(),
            num_relations: p.relations.len(),
            chain_dim: p.num_generators() * m.rank,
            module_relation_vectors: n_module,
            timings,
        },
    })
}

/// `ℤ^X / ⟨exponent sums of lhs − rhs⟩`, via a Smith form of the
/// exponent-sum matrix.
pub fn abelianization(p: &GroupPresentation) -> AbelianGroupStructure {
    let n = p.num_generators();
    let rows: Vec<Vec<BigInt>> = p
        .relations
        .iter()
        .map(|r| {
            let l = r.lhs.exponent_sums(n);
            let rr = r.rhs.exponent_sums(n);
            l.iter().zip(&rr).map(|(a, b)| BigInt::from(a - b)).collect()
        })
        .collect();
    let mat = IntMatrix::from_rows_with_cols(&rows, n);
    let diag = smith_invariants(&mat);
    AbelianGroupStructure::from_diagonal(n, &diag)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelCheckReport {
    /// Indices of candidates outside the cycle lattice.
    pub non_members: Vec<usize>,
    pub membership: bool,
    pub generation: bool,
    /// Only evaluated for free modules.
    pub independence: Option<bool>,
    pub kernel_rank: usize,
    pub candidate_count: usize,
}

impl KernelCheckReport {
    pub fn passed(&self) -> bool {
        self.membership && self.generation && self.independence.unwrap_or(true)
    }
}

/// Checks that `candidates` lie in the cycle lattice and, together with the
/// module relation chains, generate it. For free modules also checks that
/// the candidates form a basis.
pub fn verify_kernel_generators(
    p: &GroupPresentation,
    rep: &MatrixRepresentation,
    m: &CoefficientModule,
    candidates: &[ChainVector],
) -> Result<KernelCheckReport, HomologyError> {
    check_inputs(p, rep, m)?;
    let k = cycle_lattice(p, rep, m)?;
    let solver = k.solver();
    let mut non_members = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        if !solver.contains(c.coords())? {
            non_members.push(i);
        }
    }
    let n = k.ambient_dim();
    let mut gens: Vec<&[BigInt]> = candidates.iter().map(|c| c.coords()).collect();
    let module_rel = module_relation_vectors(p, m);
    gens.extend(module_rel.iter().map(|c| c.coords()));
    let spanned = LatticeBasis::from_generators(n, &gens)?;
    let generation = lattice_equal(&spanned, &k)?;
    let independence = m.is_free().then(|| {
        let mat = IntMatrix::from_columns(n, &candidates.iter().map(|c| c.coords().to_vec()).collect::<Vec<_>>());
        candidates.len() == k.rank() && rank(&mat) == candidates.len()
    });
    Ok(KernelCheckReport {
        membership: non_members.is_empty(),
        non_members,
        generation,
        independence,
        kernel_rank: k.rank(),
        candidate_count: candidates.len(),
    })
}

/// Runs [`verify_kernel_generators`] on each named candidate set and returns
/// the name of the first one that passes, with every report.
pub fn verify_kernel_generator_variants(
    p: &GroupPresentation,
    rep: &MatrixRepresentation,
    m: &CoefficientModule,
    variants: &[(String, Vec<ChainVector>)],
) -> Result<(Option<String>, Vec<(String, KernelCheckReport)>), HomologyError> {
    let mut reports = Vec::with_capacity(variants.len());
    let mut winner = None;
    for (name, cands) in variants {
        let r = verify_kernel_generators(p, rep, m, cands)?;
        if winner.is_none() && r.passed() {
            winner = Some(name.clone());
        }
        reports.push((name.clone(), r));
    }
    Ok((winner, reports))
}
