#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use twisted_homology::linalg::{hnf, is_unimodular, snf, IntMatrix};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    IntMatrix::from_rows_with_cols(&data, cols)
}

/// Matrices with dimensions in `1..=6` and entries in `[-9, 9]`, with a
/// share of low-rank ones built as products.
pub fn random_suite(seed: u64, count: usize) -> Vec<IntMatrix> {
    let mut r = rng(seed);
    (0..count)
        .map(|k| {
            let rows = r.gen_range(1..=6);
            let cols = r.gen_range(1..=6);
            if k % 4 == 3 {
                let inner = r.gen_range(1..=3);
                let a = random_matrix(&mut r, rows, inner, 3);
                let b = random_matrix(&mut r, inner, cols, 3);
                clamp(&(&a * &b), 9)
            } else {
                random_matrix(&mut r, rows, cols, 9)
            }
        })
        .collect()
}

fn clamp(m: &IntMatrix, bound: i64) -> IntMatrix {
    let mut out = m.clone();
    let b = BigInt::from(bound);
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if out[(r, c)].abs() > b {
                out[(r, c)] = out[(r, c)].clone() % &b;
            }
        }
    }
    out
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][c] * det(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `gcd` of all `k × k` minors, for `k = 1..=min(rows, cols)`.
pub fn minor_gcds(m: &IntMatrix) -> Vec<BigInt> {
    let kmax = m.rows().min(m.cols());
    (1..=kmax)
        .map(|k| {
            let mut g = BigInt::zero();
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    let sub: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| m[(r, c)].clone()).collect()).collect();
                    g = g.gcd(&det(&sub));
                }
            }
            g
        })
        .collect()
}

/// Every defining property of the Smith form of `m`, including the
/// determinant-divisor identity.
pub fn check_snf(m: &IntMatrix) -> Result<(), String> {
    let (s, u, v) = snf(m);
    if u.checked_mul(m).and_then(|um| um.checked_mul(&v)).map_err(|e| e.to_string())? != s {
        return Err("S != U M V".into());
    }
    if !is_unimodular(&u) || !is_unimodular(&v) {
        return Err("transform not unimodular".into());
    }
    let k = s.rows().min(s.cols());
    for r in 0..s.rows() {
        for c in 0..s.cols() {
            if r != c && !s[(r, c)].is_zero() {
                return Err(format!("off-diagonal entry at ({r},{c})"));
            }
        }
    }
    let diag: Vec<BigInt> = (0..k).map(|i| s[(i, i)].clone()).collect();
    for (i, d) in diag.iter().enumerate() {
        if d.is_negative() {
            return Err(format!("negative diagonal entry {i}"));
        }
        if i + 1 < k {
            let next = &diag[i + 1];
            let ok = if d.is_zero() { next.is_zero() } else { (next % d).is_zero() };
            if !ok {
                return Err(format!("divisibility fails at {i}"));
            }
        }
    }
    let gcds = minor_gcds(m);
    let mut prod = BigInt::one();
    for (i, d) in diag.iter().enumerate() {
        prod *= d;
        if prod != gcds[i] {
            return Err(format!("d1..d{} = {prod}, minor gcd = {}", i + 1, gcds[i]));
        }
    }
    Ok(())
}

/// Echelon shape, pivot normalization and `H = U M` for the Hermite form.
pub fn check_hnf(m: &IntMatrix) -> Result<(), String> {
    let (h, u) = hnf(m);
    if u.checked_mul(m).map_err(|e| e.to_string())? != h {
        return Err("H != U M".into());
    }
    if !is_unimodular(&u) {
        return Err("U not unimodular".into());
    }
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero = false;
    for r in 0..h.rows() {
        match (0..h.cols()).find(|&c| !h[(r, c)].is_zero()) {
            None => seen_zero = true,
            Some(p) => {
                if seen_zero {
                    return Err("nonzero row below a zero row".into());
                }
                if last_pivot.is_some_and(|lp| p <= lp) {
                    return Err("pivots not strictly increasing".into());
                }
                let pv = &h[(r, p)];
                if !pv.is_positive() {
                    return Err("pivot not positive".into());
                }
                for above in 0..r {
                    let x = &h[(above, p)];
                    if x.is_negative() || x >= pv {
                        return Err(format!("entry above pivot ({above},{p}) not reduced"));
                    }
                }
                last_pivot = Some(p);
            }
        }
    }
    Ok(())
}

/// Random product of elementary row operations.
pub fn random_unimodular(rng: &mut StdRng, n: usize, steps: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    if n < 2 {
        return u;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let k = BigInt::from(rng.gen_range(-2i64..=2));
        for c in 0..n {
            let add = &u[(j, c)] * &k;
            u[(i, c)] += add;
        }
        if rng.gen_bool(0.2) {
            for c in 0..n {
                let x = -u[(i, c)].clone();
                u[(i, c)] = x;
            }
        }
    }
    u
}

// Matrices printed in the hand computation of the (A5)/(A6) relations.

pub fn pad(block: &[&[i64]], g: usize) -> IntMatrix {
    let b = IntMatrix::from_rows(block);
    b.direct_sum(&IntMatrix::identity(g - block.len()))
}

pub fn sum_powers(m: &IntMatrix, top: u32) -> IntMatrix {
    let mut acc = IntMatrix::zeros(m.rows(), m.cols());
    for p in 0..=top {
        acc = acc.checked_add(&m.pow(p).unwrap()).unwrap();
    }
    acc
}

pub const A5_A: [&[i64]; 5] = [&[2, -2, 1, -1, 1], &[1, 0, 0, -1, 1], &[1, 0, 1, -2, 1], &[1, 0, 1, -1, 0], &[0, 1, 0, 0, 0]];
pub const A5_B: [&[i64]; 5] = [&[2, -2, 1, -1, 1], &[2, -1, 0, -1, 1], &[2, -1, 1, -2, 1], &[2, -1, 1, -1, 0], &[1, 0, 0, 0, 0]];
pub const A6_A: [&[i64]; 7] = [
    &[2, -2, 1, -1, 1, 0, 0],
    &[1, 0, 0, -1, 1, 0, 0],
    &[1, 0, 1, -2, 1, 0, 0],
    &[1, 0, 1, -1, 0, 0, 0],
    &[0, 2, 0, 0, 0, -1, 0],
    &[0, 2, 0, 0, 0, 0, -1],
    &[0, 1, 0, 0, 0, 0, 0],
];
pub const A6_B: [&[i64]; 7] = [
    &[2, -2, 1, -1, 1, 0, 0],
    &[2, -1, 0, -1, 1, 0, 0],
    &[2, -1, 1, -2, 1, 0, 0],
    &[2, -1, 1, -1, 0, 0, 0],
    &[2, 0, 0, 0, 0, -1, 0],
    &[2, 0, 0, 0, 0, 0, -1],
    &[1, 0, 0, 0, 0, 0, 0],
];

pub fn alternating_block(size: usize, g: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..size).map(|_| (0..size).map(|c| if c % 2 == 0 { 1 } else { -1 }).collect()).collect();
    IntMatrix::from_rows(&rows).direct_sum(&IntMatrix::identity(g - size))
}
