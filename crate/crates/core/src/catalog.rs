//! Mapping class groups of the nonorientable surfaces `N_{g,1}` and
//! `N_{g,0}`: presentations, the action on `H₁(N; ℤ)`, the coefficient
//! module, candidate generators of the cycle lattice and expected answers.
//!
//! Generator order is fixed: `a1 … a(g-1)`, `u1 … u(umax)`, the `b` block,
//! then `rho` for closed surfaces. Chain coordinates depend on it.

use num_bigint::BigInt;
use thiserror::Error;

use crate::coefficients::CoefficientModule;
use crate::fox::ChainVector;
use crate::linalg::{AbelianGroupStructure, IntMatrix};
use crate::presentation::{GroupPresentation, Relation, Word};
use crate::representation::MatrixRepresentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unsupported surface N_{{{genus},{boundary}}}: need boundary 1 with genus >= 3, or boundary 0 with genus >= 4")]
    UnsupportedSurface { genus: usize, boundary: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceSpec {
    genus: usize,
    boundary: usize,
}

impl SurfaceSpec {
    pub fn new(genus: usize, boundary: usize) -> Result<Self, CatalogError> {
        let ok = match boundary {
            1 => genus >= 3,
            0 => genus >= 4,
            _ => false,
        };
        if ok {
            Ok(SurfaceSpec { genus, boundary })
        } else {
            Err(CatalogError::UnsupportedSurface { genus, boundary })
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn boundary(&self) -> usize {
        self.boundary
    }

    pub fn is_closed(&self) -> bool {
        self.boundary == 0
    }

    /// Number of `u` generators, `min(5, g-1)`.
    pub fn umax(&self) -> usize {
        5.min(self.genus - 1)
    }

    /// Indices `j` of the generators `b_j`, in order.
    pub fn b_indices(&self) -> Vec<usize> {
        let g = self.genus;
        if g == 3 {
            vec![]
        } else if g % 2 == 1 || g == 4 {
            vec![1]
        } else {
            (0..=(g - 2) / 2).collect()
        }
    }

    pub fn generator_names(&self) -> Vec<String> {
        let mut names: Vec<String> = (1..self.genus).map(|j| format!("a{j}")).collect();
        names.extend((1..=self.umax()).map(|j| format!("u{j}")));
        names.extend(self.b_indices().into_iter().map(|j| format!("b{j}")));
        if self.is_closed() {
            names.push("rho".into());
        }
        names
    }

    /// Every supported spec with genus in `g_min..=g_max`, boundary 1 first.
    pub fn range(g_min: usize, g_max: usize, boundaries: &[usize]) -> Vec<SurfaceSpec> {
        let mut out = Vec::new();
        for &s in boundaries {
            for g in g_min..=g_max {
                if let Ok(spec) = SurfaceSpec::new(g, s) {
                    out.push(spec);
                }
            }
        }
        out
    }
}

impl std::fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "N_{{{},{}}}", self.genus, self.boundary)
    }
}

struct Builder {
    p: GroupPresentation,
}

impl Builder {
    fn word(&self, names: &[String]) -> Word {
        let idx: Vec<usize> = names
            .iter()
            .map(|n| self.p.generator_index(n).unwrap_or_else(|| panic!("catalog generator {n} missing")))
            .collect();
        Word::from_generators(&idx)
    }

    fn rel(&mut self, label: impl Into<String>, lhs: Word, rhs: Word) {
        self.p.push_relation(Relation::labeled(label, lhs, rhs));
    }
}

fn a(j: usize) -> String {
    format!("a{j}")
}
fn u(j: usize) -> String {
    format!("u{j}")
}
fn b(j: usize) -> String {
    format!("b{j}")
}
fn seq(f: fn(usize) -> String, js: impl IntoIterator<Item = usize>) -> Vec<String> {
    js.into_iter().map(f).collect()
}
fn cat(parts: &[&[String]]) -> Vec<String> {
    parts.concat()
}

pub fn mcg_presentation(spec: &SurfaceSpec) -> GroupPresentation {
    let g = spec.genus;
    let umax = spec.umax();
    let mut bld = Builder {
        p: GroupPresentation::new(format!("MCG(N_{},{})", g, spec.boundary), &spec.generator_names()),
    };
    let w = |b: &Builder, xs: &[String]| b.word(xs);
    let has_b1 = g >= 4;

    if g >= 4 {
        for j in 1..g {
            for k in (j + 2)..g {
                let (l, r) = (w(&bld, &[a(j), a(k)]), w(&bld, &[a(k), a(j)]));
                bld.rel(format!("A1_{j}_{k}"), l, r);
            }
        }
    }
    for j in 1..=g - 2 {
        let (l, r) = (w(&bld, &[a(j), a(j + 1), a(j)]), w(&bld, &[a(j + 1), a(j), a(j + 1)]));
        bld.rel(format!("A2_{j}"), l, r);
    }
    if has_b1 {
        for j in (1..g).filter(|&j| j != 4) {
            let (l, r) = (w(&bld, &[a(j), b(1)]), w(&bld, &[b(1), a(j)]));
            bld.rel(format!("A3_{j}"), l, r);
        }
    }
    if g >= 5 {
        let (l, r) = (w(&bld, &[b(1), a(4), b(1)]), w(&bld, &[a(4), b(1), a(4)]));
        bld.rel("A4", l, r);
        let l = w(&bld, &cat(&[&seq(a, 2..=4), &[b(1)]])).power(10);
        let r = w(&bld, &cat(&[&seq(a, 1..=4), &[b(1)]])).power(6);
        bld.rel("A5", l, r);
    }
    if g >= 7 {
        let l = w(&bld, &cat(&[&seq(a, 2..=6), &[b(1)]])).power(12);
        let r = w(&bld, &cat(&[&seq(a, 1..=6), &[b(1)]])).power(9);
        bld.rel("A6", l, r);
    }
    if g >= 4 {
        let (l, r) = (w(&bld, &[u(1), u(3)]), w(&bld, &[u(3), u(1)]));
        bld.rel("B1", l, r);
    }
    let (l, r) = (w(&bld, &[u(1), u(2), u(1)]), w(&bld, &[u(2), u(1), u(2)]));
    bld.rel("B2", l, r);
    if g >= 4 {
        for j in 3..g {
            let (l, r) = (w(&bld, &[u(1), a(j)]), w(&bld, &[a(j), u(1)]));
            bld.rel(format!("C1_{j}"), l, r);
        }
    }
    let (l, r) = (w(&bld, &[a(1), u(2), u(1)]), w(&bld, &[u(2), u(1), a(2)]));
    bld.rel("C2", l, r);
    let (l, r) = (w(&bld, &[a(1), u(1), a(1)]), w(&bld, &[u(1)]));
    bld.rel("C4", l, r);
    // Capped at umax - 1 so that u(j+1) is a generator.
    for j in 1..umax {
        let (l, r) = (w(&bld, &[u(j + 1), a(j), a(j + 1), u(j)]), w(&bld, &[a(j), a(j + 1)]));
        bld.rel(format!("C5_{j}"), l, r);
    }
    if g >= 4 {
        let l = w(&bld, &[u(3), b(1)]).power(2);
        let r = w(&bld, &seq(a, 1..=3)).power(2).concat(&w(&bld, &seq(u, 1..=3)).power(2));
        bld.rel("C6", l, r);
    }
    if g >= 6 {
        let (l, r) = (w(&bld, &[u(5), b(1)]), w(&bld, &[b(1), u(5)]));
        bld.rel("C7", l, r);
    }
    if g >= 5 {
        let l = w(&bld, &[b(1), a(4), u(4)]);
        let r = w(&bld, &cat(&[&[a(4), u(4)], &seq(a, (1..=4).rev()), &seq(u, 1..=4), &[b(1)]]));
        bld.rel("C8", l, r);
    }
    if g >= 6 && g % 2 == 0 {
        let (l, r) = (w(&bld, &[b(0)]), w(&bld, &[a(1)]));
        bld.rel("A7", l, r);
        for j in 1..=(g - 4) / 2 {
            let core = cat(&[&[b(j - 1)], &seq(a, 2 * j..=2 * j + 3)]);
            let l = w(&bld, &[b(j + 1)]).concat(&w(&bld, &core).power(6));
            let r = w(&bld, &cat(&[&core, &[b(j)]])).power(5);
            bld.rel(format!("A8_{j}"), l, r);
        }
        if g == 6 {
            let (l, r) = (w(&bld, &[b(2), b(1)]), w(&bld, &[b(1), b(2)]));
            bld.rel("A9a", l, r);
        } else {
            let top = (g - 2) / 2;
            let (l, r) = (w(&bld, &[b(top), a(g - 5)]), w(&bld, &[a(g - 5), b(top)]));
            bld.rel("A9b", l, r);
        }
    }
    if spec.is_closed() {
        let rho = "rho".to_string();
        let l = w(&bld, &seq(a, 1..g)).power(g as i64);
        let r = if g % 2 == 0 { Word::identity() } else { w(&bld, &[rho.clone()]) };
        bld.rel("B3", l, r);
        for j in 1..g {
            let (l, r) = (w(&bld, &[rho.clone(), a(j)]), w(&bld, &[a(j), rho.clone()]));
            bld.rel(format!("D1_{j}"), l, r);
        }
        let (l, r) = (w(&bld, &[u(1), rho.clone(), u(1)]), w(&bld, &[rho.clone()]));
        bld.rel("D2", l, r);
        let l = w(&bld, &[rho.clone(), rho.clone()]);
        bld.rel("E", l, Word::identity());
        let l = w(&bld, &cat(&[&[u(1)], &seq(a, 1..g), &[rho]])).power(g as i64 - 1);
        bld.rel("F", l, Word::identity());
    }
    bld.p
}

fn block_matrix(g: usize, j: usize, block: [[i64; 2]; 2]) -> IntMatrix {
    assert!(j >= 1 && j < g, "block index {j} out of range for genus {g}");
    let mut m = IntMatrix::identity(g);
    for (r, row) in block.iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            m[(j - 1 + r, j - 1 + c)] = BigInt::from(x);
        }
    }
    m
}

pub fn psi_a(g: usize, j: usize) -> IntMatrix {
    block_matrix(g, j, [[0, 1], [-1, 2]])
}

pub fn psi_a_inv(g: usize, j: usize) -> IntMatrix {
    block_matrix(g, j, [[2, -1], [1, 0]])
}

/// Defined for every `j` in `1..g`, not only for the `u` generators.
pub fn psi_u(g: usize, j: usize) -> IntMatrix {
    block_matrix(g, j, [[0, 1], [1, 0]])
}

fn b_matrix(g: usize, j: usize, sign: i64) -> IntMatrix {
    let size = 2 * j + 2;
    assert!(size <= g, "b{j} needs genus at least {size}");
    let mut m = IntMatrix::identity(g);
    for r in 0..size {
        for c in 0..size {
            let x = if c % 2 == 0 { -sign } else { sign };
            m[(r, c)] += BigInt::from(x);
        }
    }
    m
}

pub fn psi_b(g: usize, j: usize) -> IntMatrix {
    b_matrix(g, j, 1)
}

pub fn psi_b_inv(g: usize, j: usize) -> IntMatrix {
    b_matrix(g, j, -1)
}

pub fn psi_rho(g: usize) -> IntMatrix {
    IntMatrix::identity(g).neg()
}

/// `ψ(a₁)⋯ψ(a_{g-1})·ψ(u_{g-1})⋯ψ(u₁)`.
pub fn hyperelliptic_product(g: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(g);
    for j in 1..g {
        m = &m * &psi_a(g, j);
    }
    for j in (1..g).rev() {
        m = &m * &psi_u(g, j);
    }
    m
}

pub fn mcg_action(spec: &SurfaceSpec) -> MatrixRepresentation {
    let g = spec.genus;
    let mut entries = Vec::new();
    for j in 1..g {
        entries.push((a(j), psi_a(g, j), psi_a_inv(g, j)));
    }
    for j in 1..=spec.umax() {
        entries.push((u(j), psi_u(g, j), psi_u(g, j)));
    }
    for j in spec.b_indices() {
        entries.push((b(j), psi_b(g, j), psi_b_inv(g, j)));
    }
    if spec.is_closed() {
        entries.push(("rho".into(), psi_rho(g), psi_rho(g)));
    }
    MatrixRepresentation::with_inverses(g, entries).expect("catalog inverses are exact")
}

pub fn mcg_module(spec: &SurfaceSpec) -> CoefficientModule {
    let g = spec.genus;
    if spec.is_closed() {
        CoefficientModule::new(g, vec![vec![BigInt::from(2); g]], format!("H1(N_{g},0) = Z^{g} / 2(γ1+…+γ{g})"))
            .expect("relation has module rank")
    } else {
        let mut m = CoefficientModule::free(g);
        m.description = format!("H1(N_{g},1) = Z^{g}");
        m
    }
}

pub fn expected_h1(spec: &SurfaceSpec) -> AbelianGroupStructure {
    if spec.genus <= 6 {
        AbelianGroupStructure::from_torsion(0, &[2, 2, 2])
    } else {
        AbelianGroupStructure::from_torsion(0, &[2, 2])
    }
}

/// Sign of the `b_{j,2i+1} ± b_{j,1}` family, which differs between the
/// closed and bounded descriptions of the cycle lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum G10Sign {
    Minus,
    Plus,
}

impl G10Sign {
    pub fn name(self) -> &'static str {
        match self {
            G10Sign::Minus => "minus",
            G10Sign::Plus => "plus",
        }
    }
}

/// Candidate generators of the cycle lattice, each tagged with an item
/// label such as `G2_3` or `G8_1_5`.
#[derive(Debug, Clone)]
pub struct KernelCandidates {
    pub common: Vec<(String, ChainVector)>,
    pub g10_minus: Vec<(String, ChainVector)>,
    pub g10_plus: Vec<(String, ChainVector)>,
}

impl KernelCandidates {
    pub fn with_sign(&self, sign: G10Sign) -> Vec<ChainVector> {
        let extra = match sign {
            G10Sign::Minus => &self.g10_minus,
            G10Sign::Plus => &self.g10_plus,
        };
        self.common.iter().chain(extra).map(|(_, v)| v.clone()).collect()
    }

    pub fn variants(&self) -> Vec<(String, Vec<ChainVector>)> {
        [G10Sign::Minus, G10Sign::Plus]
            .into_iter()
            .map(|s| (s.name().to_string(), self.with_sign(s)))
            .collect()
    }

    pub fn find(&self, label: &str) -> Option<&ChainVector> {
        self.common
            .iter()
            .chain(&self.g10_minus)
            .find(|(l, _)| l == label)
            .map(|(_, v)| v)
    }
}

struct Chains {
    names: Vec<String>,
    rank: usize,
}

impl Chains {
    /// Sum of `c · [x]⊗γᵢ` with 1-based `i`.
    fn combo(&self, terms: &[(&str, usize, i64)]) -> ChainVector {
        let mut v = ChainVector::zero(self.names.len(), self.rank);
        for &(x, i, c) in terms {
            let gen = self.names.iter().position(|n| n == x).unwrap_or_else(|| panic!("no generator {x}"));
            v.add_term(gen, i - 1, &BigInt::from(c));
        }
        v
    }
}

pub fn prop4_generators(spec: &SurfaceSpec) -> KernelCandidates {
    let g = spec.genus;
    let umax = spec.umax();
    let ch = Chains {
        names: spec.generator_names(),
        rank: g,
    };
    let mut common = Vec::new();
    let mut push = |label: String, v: ChainVector| common.push((label, v));

    for j in 1..g {
        for i in (1..=g).filter(|&i| i != j && i != j + 1) {
            push(format!("G1_{j}_{i}"), ch.combo(&[(&a(j), i, 1)]));
        }
    }
    for j in 1..g {
        push(format!("G2_{j}"), ch.combo(&[(&a(j), j, 1), (&a(j), j + 1, 1)]));
    }
    for j in 1..=umax {
        for i in (1..=g).filter(|&i| i != j && i != j + 1) {
            push(format!("G3_{j}_{i}"), ch.combo(&[(&u(j), i, 1)]));
        }
    }
    for j in 1..=umax {
        push(format!("G4_{j}"), ch.combo(&[(&u(j), j, 1), (&u(j), j + 1, 1)]));
    }
    for j in 1..umax {
        push(
            format!("G5_{j}"),
            ch.combo(&[(&a(j), j, 1), (&a(j + 1), j + 1, -1), (&u(j), j, 1), (&u(j + 1), j + 1, 1)]),
        );
    }
    if spec.is_closed() {
        for j in 1..g {
            push(format!("G6_{j}"), ch.combo(&[(&a(j), j, 2), ("rho", j, 1), ("rho", j + 1, 1)]));
        }
        push("G7".into(), ch.combo(&[(&a(1), 1, 1), ("rho", 1, 1), (&u(1), 1, -1)]));
    }
    let mut g10_minus = Vec::new();
    let mut g10_plus = Vec::new();
    for j in spec.b_indices() {
        let bj = b(j);
        for i in 2 * j + 3..=g {
            push(format!("G8_{j}_{i}"), ch.combo(&[(&bj, i, 1)]));
        }
        for i in 1..=j + 1 {
            push(format!("G9_{j}_{i}"), ch.combo(&[(&bj, 2 * i, 1), (&bj, 1, 1)]));
        }
        for i in 1..=j {
            g10_minus.push((format!("G10_{j}_{i}"), ch.combo(&[(&bj, 2 * i + 1, 1), (&bj, 1, -1)])));
            g10_plus.push((format!("G10_{j}_{i}"), ch.combo(&[(&bj, 2 * i + 1, 1), (&bj, 1, 1)])));
        }
        let names: Vec<String> = (0..=j).map(|k| a(2 * k + 1)).collect();
        let mut terms: Vec<(&str, usize, i64)> = vec![(&bj, 1, 1)];
        terms.extend(names.iter().enumerate().map(|(k, n)| (n.as_str(), 2 * k + 1, -1)));
        push(format!("G11_{j}"), ch.combo(&terms));
    }
    if spec.is_closed() {
        let names: Vec<String> = (1..g).map(a).collect();
        let mut terms: Vec<(&str, usize, i64)> = Vec::new();
        if g % 2 == 1 {
            terms.push((&names[0], 1, 1));
            for j in (2..g).step_by(2) {
                terms.push((&names[j - 1], j, 2));
            }
            terms.push(("u1", 1, -1));
        } else {
            for j in (1..g).step_by(2) {
                terms.push((&names[j - 1], j, 2));
            }
        }
        push("G12".into(), ch.combo(&terms));
    }
    KernelCandidates {
        common,
        g10_minus,
        g10_plus,
    }
}
