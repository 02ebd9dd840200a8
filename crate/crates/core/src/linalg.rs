//! Exact integer matrix and lattice algebra.
//!
//! Everything here works over arbitrary-precision integers. Matrices are
//! dense and row-major. Lattices are given by a basis stored as the columns
//! of an [`IntMatrix`]; canonical forms are row-style Hermite normal forms of
//! the transposed basis, so two lattices are equal exactly when those forms
//! coincide.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("columns of the basis are not linearly independent (rank {rank} < {cols})")]
    DependentBasis { rank: usize, cols: usize },
    #[error("subgroup generator #{index} is not contained in the lattice")]
    SubgroupNotContained { index: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row slices. Panics on ragged input.
    pub fn from_rows<R, T>(rows: &[R]) -> Self
    where
        R: AsRef<[T]>,
        T: Clone + Into<BigInt>,
    {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`IntMatrix::from_rows`] but keeps the column count when there
    /// are no rows.
    pub fn from_rows_with_cols<R, T>(rows: &[R], cols: usize) -> Self
    where
        R: AsRef<[T]>,
        T: Clone + Into<BigInt>,
    {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns<C, T>(ambient_dim: usize, columns: &[C]) -> Self
    where
        C: AsRef<[T]>,
        T: Clone + Into<BigInt>,
    {
        let mut m = Self::zeros(ambient_dim, columns.len());
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            assert_eq!(c.len(), ambient_dim, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone().into();
            }
        }
        m
    }

    pub fn diagonal_matrix<T: Clone + Into<BigInt>>(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone().into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = BigInt::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &IntMatrix,
        f: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> Result<IntMatrix, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn neg(&self) -> IntMatrix {
        self.scale(&BigInt::from(-1))
    }

    /// Matrix power for square matrices (`pow(0)` is the identity).
    pub fn pow(&self, mut e: u32) -> Result<IntMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..other.cols {
                out[(r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        Ok(out)
    }

    /// Top-left `rows x cols` block.
    pub fn block(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut out = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out[(r, c)] = self[(r, c)].clone();
            }
        }
        out
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out[(self.rows + r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        out
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

/// Panics on incompatible shapes; use [`IntMatrix::checked_mul`] otherwise.
impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("incompatible matrix shapes")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix({}x{}) {}", self.rows, self.cols, self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, x) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// Row and column operations on row-vector storage.

type Rows = Vec<Vec<BigInt>>;

/// `rows[target] -= q * rows[src]`
fn sub_row(rows: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    debug_assert_ne!(target, src);
    let (t, s) = if target < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn negate_row(row: &mut [BigInt]) {
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = -&*x;
        }
    }
}

/// `col[target] -= q * col[src]` on every row.
fn sub_col(rows: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    for row in rows.iter_mut() {
        if !row[src].is_zero() {
            let d = q * &row[src];
            row[target] -= d;
        }
    }
}

fn swap_cols(rows: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a != b {
        for row in rows.iter_mut() {
            row.swap(a, b);
        }
    }
}

fn identity_rows(n: usize) -> Rows {
    (0..n)
        .map(|i| {
            let mut r = vec![BigInt::zero(); n];
            r[i] = BigInt::one();
            r
        })
        .collect()
}

fn rows_to_matrix(rows: Rows, cols: usize) -> IntMatrix {
    IntMatrix::from_rows_with_cols(&rows, cols)
}

/// In-place row-style Hermite reduction. Returns the pivot columns; rows
/// beyond `pivots.len()` are zero afterwards. When `transform` is given, the
/// same row operations are applied to it.
fn hermite_in_place(a: &mut [Vec<BigInt>], ncols: usize, mut transform: Option<&mut [Vec<BigInt>]>) -> Vec<usize> {
    let m = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].magnitude().cmp(a[j][c].magnitude()));
            let Some(p) = best else { break };
            a.swap(r, p);
            if let Some(u) = transform.as_deref_mut() {
                u.swap(r, p);
            }
            let mut clean = true;
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                sub_row(a, i, r, &q);
                if let Some(u) = transform.as_deref_mut() {
                    sub_row(u, i, r, &q);
                }
                if !a[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            negate_row(&mut a[r]);
            if let Some(u) = transform.as_deref_mut() {
                negate_row(&mut u[r]);
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if !q.is_zero() {
                sub_row(a, i, r, &q);
                if let Some(u) = transform.as_deref_mut() {
                    sub_row(u, i, r, &q);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// In-place Smith reduction with minimal-magnitude pivoting. Returns the
/// rank; afterwards `a` is diagonal with a nonnegative divisibility chain.
fn smith_in_place(
    a: &mut [Vec<BigInt>],
    ncols: usize,
    mut left: Option<&mut [Vec<BigInt>]>,
    mut right: Option<&mut [Vec<BigInt>]>,
) -> usize {
    let m = a.len();
    let n = ncols;
    let mut t = 0;
    while t < m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => a[i][j].magnitude() < a[bi][bj].magnitude(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return t;
            };
            a.swap(t, pi);
            if let Some(u) = left.as_deref_mut() {
                u.swap(t, pi);
            }
            swap_cols(a, t, pj);
            if let Some(v) = right.as_deref_mut() {
                swap_cols(v, t, pj);
            }

            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                sub_row(a, i, t, &q);
                if let Some(u) = left.as_deref_mut() {
                    sub_row(u, i, t, &q);
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                sub_col(a, j, t, &q);
                if let Some(v) = right.as_deref_mut() {
                    sub_col(v, j, t, &q);
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // Pivot isolated; enforce divisibility of the remaining block.
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offender {
                Some(i) => {
                    let minus_one = BigInt::from(-1);
                    sub_row(a, t, i, &minus_one);
                    if let Some(u) = left.as_deref_mut() {
                        sub_row(u, t, i, &minus_one);
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            negate_row(&mut a[t]);
            if let Some(u) = left.as_deref_mut() {
                negate_row(&mut u[t]);
            }
        }
        t += 1;
    }
    t
}

// ---------------------------------------------------------------------------
// Public normal forms.

/// Row-style Hermite normal form: returns `(H, U)` with `U` unimodular and
/// `H = U·M` row-echelon, pivots positive and entries above each pivot in
/// `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut a = m.to_rows();
    let mut u = identity_rows(m.rows());
    hermite_in_place(&mut a, m.cols(), Some(&mut u));
    (rows_to_matrix(a, m.cols()), rows_to_matrix(u, m.rows()))
}

/// Pivot columns of the Hermite normal form of `m`, one per nonzero row.
pub fn hnf_pivots(m: &IntMatrix) -> Vec<usize> {
    let mut a = m.to_rows();
    hermite_in_place(&mut a, m.cols(), None)
}

/// Smith normal form: returns `(S, U, V)` with `S = U·M·V`, `U` and `V`
/// unimodular, `S` diagonal with `d₁ | d₂ | …`, all nonnegative and the
/// zero invariants last.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut a = m.to_rows();
    let mut u = identity_rows(m.rows());
    let mut v = identity_rows(m.cols());
    smith_in_place(&mut a, m.cols(), Some(&mut u), Some(&mut v));
    (
        rows_to_matrix(a, m.cols()),
        rows_to_matrix(u, m.rows()),
        rows_to_matrix(v, m.cols()),
    )
}

/// Diagonal of the Smith normal form, `min(rows, cols)` entries long.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.to_rows();
    smith_invariants_of_rows(&mut a, m.cols())
}

fn smith_invariants_of_rows(a: &mut [Vec<BigInt>], ncols: usize) -> Vec<BigInt> {
    smith_in_place(a, ncols, None, None);
    (0..a.len().min(ncols)).map(|i| a[i][i].clone()).collect()
}

pub fn rank(m: &IntMatrix) -> usize {
    hnf_pivots(m).len()
}

/// `true` iff `m` is square with Smith form the identity.
pub fn is_unimodular(m: &IntMatrix) -> bool {
    m.is_square() && smith_invariants(m).iter().all(One::is_one)
}

/// Exact inverse of a unimodular matrix, or `None` if `m` is not unimodular.
pub fn unimodular_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    if !m.is_square() {
        return None;
    }
    let (h, u) = hnf(m);
    h.is_identity().then_some(u)
}

// ---------------------------------------------------------------------------
// Lattices.

/// A lattice in `ℤ^ambient_dim` given by linearly independent basis columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    ambient_dim: usize,
    basis: IntMatrix,
}

impl LatticeBasis {
    /// Wraps basis columns, rejecting dependent sets.
    pub fn new(basis: IntMatrix) -> Result<Self, LinalgError> {
        let r = rank(&basis);
        if r != basis.cols() {
            return Err(LinalgError::DependentBasis {
                rank: r,
                cols: basis.cols(),
            });
        }
        Ok(LatticeBasis {
            ambient_dim: basis.rows(),
            basis,
        })
    }

    pub fn empty(ambient_dim: usize) -> Self {
        LatticeBasis {
            ambient_dim,
            basis: IntMatrix::zeros(ambient_dim, 0),
        }
    }

    pub fn standard(ambient_dim: usize) -> Self {
        LatticeBasis {
            ambient_dim,
            basis: IntMatrix::identity(ambient_dim),
        }
    }

    /// The lattice spanned by an arbitrary (possibly dependent) generating
    /// set, returned with its canonical Hermite basis.
    pub fn from_generators<V: AsRef<[BigInt]>>(ambient_dim: usize, gens: &[V]) -> Result<Self, LinalgError> {
        let mut rows: Rows = Vec::with_capacity(gens.len());
        for g in gens {
            let g = g.as_ref();
            if g.len() != ambient_dim {
                return Err(LinalgError::DimensionMismatch {
                    expected: ambient_dim,
                    found: g.len(),
                });
            }
            if g.iter().any(|x| !x.is_zero()) {
                rows.push(g.to_vec());
            }
        }
        let pivots = hermite_in_place(&mut rows, ambient_dim, None);
        rows.truncate(pivots.len());
        Ok(LatticeBasis {
            ambient_dim,
            basis: rows_to_matrix(rows, ambient_dim).transpose(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<BigInt>> {
        self.basis.columns()
    }

    /// Canonical basis: nonzero rows of the Hermite form of the transposed
    /// basis, returned as row vectors.
    pub fn canonical_rows(&self) -> Vec<Vec<BigInt>> {
        let mut rows = self.basis.transpose().to_rows();
        let pivots = hermite_in_place(&mut rows, self.ambient_dim, None);
        rows.truncate(pivots.len());
        rows
    }

    pub fn solver(&self) -> LatticeSolver {
        LatticeSolver::new(self)
    }
}

/// Precomputed Hermite data for repeated membership queries.
#[derive(Clone, Debug)]
pub struct LatticeSolver {
    ambient_dim: usize,
    echelon: Rows,
    transform: Rows,
    pivots: Vec<usize>,
}

impl LatticeSolver {
    pub fn new(lattice: &LatticeBasis) -> Self {
        let mut echelon = lattice.basis.transpose().to_rows();
        let mut transform = identity_rows(lattice.rank());
        let pivots = hermite_in_place(&mut echelon, lattice.ambient_dim, Some(&mut transform));
        LatticeSolver {
            ambient_dim: lattice.ambient_dim,
            echelon,
            transform,
            pivots,
        }
    }

    /// Coordinates of `v` in the lattice basis, or `None` if `v` is not in
    /// the lattice.
    pub fn solve(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
        if v.len() != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        let mut residual = v.to_vec();
        let mut echelon_coords = Vec::with_capacity(self.pivots.len());
        for (r, &p) in self.pivots.iter().enumerate() {
            let (q, rem) = residual[p].div_rem(&self.echelon[r][p]);
            if !rem.is_zero() {
                return Ok(None);
            }
            if !q.is_zero() {
                for (x, y) in residual.iter_mut().zip(&self.echelon[r]) {
                    if !y.is_zero() {
                        *x -= &q * y;
                    }
                }
            }
            echelon_coords.push(q);
        }
        if residual.iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        let k = self.transform.len();
        let mut coords = vec![BigInt::zero(); k];
        for (c, urow) in echelon_coords.iter().zip(&self.transform) {
            if c.is_zero() {
                continue;
            }
            for (x, u) in coords.iter_mut().zip(urow) {
                if !u.is_zero() {
                    *x += c * u;
                }
            }
        }
        Ok(Some(coords))
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool, LinalgError> {
        Ok(self.solve(v)?.is_some())
    }
}

/// Basis of the integer kernel `{v : M·v = 0}`.
pub fn kernel(m: &IntMatrix) -> LatticeBasis {
    let n = m.cols();
    let mut a = m.transpose().to_rows();
    let mut u = identity_rows(n);
    let pivots = hermite_in_place(&mut a, m.rows(), Some(&mut u));
    let mut k: Rows = u.split_off(pivots.len());
    let kp = hermite_in_place(&mut k, n, None);
    k.truncate(kp.len());
    LatticeBasis {
        ambient_dim: n,
        basis: rows_to_matrix(k, n).transpose(),
    }
}

/// Coordinates `c` with `B·c = v`, or `None` when `v ∉ B`.
pub fn lattice_membership(b: &LatticeBasis, v: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
    b.solver().solve(v)
}

pub fn lattice_equal(a: &LatticeBasis, b: &LatticeBasis) -> Result<bool, LinalgError> {
    if a.ambient_dim != b.ambient_dim {
        return Err(LinalgError::DimensionMismatch {
            expected: a.ambient_dim,
            found: b.ambient_dim,
        });
    }
    Ok(a.rank() == b.rank() && a.canonical_rows() == b.canonical_rows())
}

/// Invariants of `K/⟨S⟩`. Every element of `subgroup` must lie in `k`.
pub fn quotient_invariants<V: AsRef<[BigInt]>>(
    k: &LatticeBasis,
    subgroup: &[V],
) -> Result<AbelianGroupStructure, LinalgError> {
    let solver = k.solver();
    let mut coords: Rows = Vec::with_capacity(subgroup.len());
    for (index, s) in subgroup.iter().enumerate() {
        match solver.solve(s.as_ref())? {
            Some(c) => {
                if c.iter().any(|x| !x.is_zero()) {
                    coords.push(c);
                }
            }
            None => return Err(LinalgError::SubgroupNotContained { index }),
        }
    }
    Ok(cokernel_of_rows(coords, k.rank()))
}

/// `ℤ^n / ⟨rows⟩` as an abelian group.
pub fn cokernel_of_rows(mut rows: Vec<Vec<BigInt>>, n: usize) -> AbelianGroupStructure {
    // Shrink to at most n rows before the Smith step.
    let pivots = hermite_in_place(&mut rows, n, None);
    rows.truncate(pivots.len());
    let diag = smith_invariants_of_rows(&mut rows, n);
    AbelianGroupStructure::from_diagonal(n, &diag)
}

// ---------------------------------------------------------------------------

/// Finitely generated abelian group `ℤ^free_rank ⊕ ⊕ ℤ/torsionᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroupStructure {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroupStructure {
    /// Validates the canonical form: each factor ≥ 2, consecutive factors
    /// dividing.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self, String> {
        let two = BigInt::from(2);
        if let Some(t) = torsion.iter().find(|t| **t < two) {
            return Err(format!("torsion factor {t} is smaller than 2"));
        }
        if let Some(w) = torsion.windows(2).find(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(format!("{} does not divide {}", w[0], w[1]));
        }
        Ok(AbelianGroupStructure { free_rank, torsion })
    }

    pub fn from_torsion<T: Into<BigInt> + Clone>(free_rank: usize, torsion: &[T]) -> Self {
        Self::new(free_rank, torsion.iter().cloned().map(Into::into).collect())
            .expect("torsion must be a divisibility chain")
    }

    /// Cokernel of a map into `ℤ^n` with Smith diagonal `diag`.
    pub fn from_diagonal(n: usize, diag: &[BigInt]) -> Self {
        let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
        let torsion = diag.iter().filter(|d| **d > BigInt::one()).cloned().collect();
        AbelianGroupStructure {
            free_rank: n - nonzero,
            torsion,
        }
    }

    pub fn trivial() -> Self {
        AbelianGroupStructure {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        use num_traits::ToPrimitive;
        self.torsion.iter().map(|t| t.to_u64().unwrap_or(u64::MAX)).collect()
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = std::iter::repeat("Z".to_string())
            .take(self.free_rank)
            .chain(self.torsion.iter().map(|t| format!("Z{t}")))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// Integer vector helper.
pub fn int_vec<T: Clone + Into<BigInt>>(xs: &[T]) -> Vec<BigInt> {
    xs.iter().cloned().map(Into::into).collect()
}
