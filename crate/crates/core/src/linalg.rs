//! Dense integer matrices and exact rank over a [`FieldSpec`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::field::FieldSpec;

/// Row-major dense integer matrix. Entries of boundary and bar
/// differentials are in `{-1, 0, 1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Matrix::zeros(k, k);
        for i in 0..k {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// `self * other` over the integers.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Append `v` as a new last column.
    pub fn with_column(&self, v: &[i64]) -> Matrix {
        assert_eq!(v.len(), self.rows);
        let mut out = Matrix::zeros(self.rows, self.cols + 1);
        for (r, &x) in v.iter().enumerate() {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            out.set(r, self.cols, x);
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Exact rank of `m` over `field`.
pub fn rank(m: &Matrix, field: FieldSpec) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    match field {
        FieldSpec::Prime(2) => rank_gf2(m),
        FieldSpec::Prime(p) => rank_mod_p(m, u64::from(p)),
        FieldSpec::Rationals => rank_rational(m),
    }
}

/// True iff `v` lies in the column space of `m` over `field`.
pub fn in_column_space(m: &Matrix, v: &[i64], field: FieldSpec) -> bool {
    rank(&m.with_column(v), field) == rank(m, field)
}

fn rank_gf2(m: &Matrix) -> usize {
    let words = m.cols.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = (0..m.rows)
        .map(|r| {
            let mut bits = vec![0u64; words];
            for (c, &x) in m.row(r).iter().enumerate() {
                if x & 1 != 0 {
                    bits[c / 64] |= 1 << (c % 64);
                }
            }
            bits
        })
        .collect();

    let mut rank = 0;
    for col in 0..m.cols {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pivot).skip(w) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn rank_mod_p(m: &Matrix, p: u64) -> usize {
    let pi = p as i64;
    let mut a: Vec<Vec<u64>> = (0..m.rows)
        .map(|r| m.row(r).iter().map(|&x| x.rem_euclid(pi) as u64).collect())
        .collect();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = inv_mod(a[rank][col], p);
        for x in a[rank][col..].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for (x, &y) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x = (*x + p - mul_mod(f, y, p)) % p;
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Integer arithmetic needed by fraction-free elimination. Fixed-width
/// implementations report overflow with `None`.
trait ExactInt: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(x: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn mul_sub_div(p: &Self, x: &Self, f: &Self, y: &Self, d: &Self) -> Option<Self>;
}

impl ExactInt for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(x: i64) -> Self {
        i128::from(x)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul_sub_div(p: &Self, x: &Self, f: &Self, y: &Self, d: &Self) -> Option<Self> {
        let num = p.checked_mul(*x)?.checked_sub(f.checked_mul(*y)?)?;
        debug_assert_eq!(num % d, 0);
        Some(num / d)
    }
}

impl ExactInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_sub_div(p: &Self, x: &Self, f: &Self, y: &Self, d: &Self) -> Option<Self> {
        Some((p * x - f * y) / d)
    }
}

/// Bareiss fraction-free elimination. Every intermediate entry is a minor
/// of the input, so the division by the previous pivot is exact.
fn bareiss_rank<T: ExactInt>(m: &Matrix) -> Option<usize> {
    let mut a: Vec<Vec<T>> = (0..m.rows)
        .map(|r| m.row(r).iter().map(|&x| T::from_i64(x)).collect())
        .collect();
    let mut prev = T::one();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(piv) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let p = pivot_row[col].clone();
        for row in rest.iter_mut() {
            let f = row[col].clone();
            for j in col + 1..m.cols {
                row[j] = T::mul_sub_div(&p, &row[j], &f, &pivot_row[j], &prev)?;
            }
            row[col] = T::zero();
        }
        prev = p;
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    Some(rank)
}

fn rank_rational(m: &Matrix) -> usize {
    let (units, residual) = unit_pivot_reduce(m).unwrap_or((0, m.clone()));
    units + bareiss_rational(&residual)
}

fn bareiss_rational(m: &Matrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    bareiss_rank::<i128>(m).unwrap_or_else(|| {
        bareiss_rank::<BigInt>(m).expect("arbitrary precision cannot overflow")
    })
}

type SparseRow = Vec<(usize, i64)>;

/// `row - f * pivot` on sorted sparse rows; `None` on overflow.
fn axpy(row: &SparseRow, f: i64, pivot: &SparseRow) -> Option<SparseRow> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i == row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i]);
            i += 1;
        } else if take_piv {
            out.push((pivot[j].0, f.checked_mul(pivot[j].1)?.checked_neg()?));
            j += 1;
        } else {
            let v = row[i].1.checked_sub(f.checked_mul(pivot[j].1)?)?;
            if v != 0 {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Eliminate on `±1` pivots (unimodular steps), sparsest row first. Returns
/// the number of pivots and the Schur complement on the remaining rows and
/// columns, or `None` if an entry overflows.
fn unit_pivot_reduce(m: &Matrix) -> Option<(usize, Matrix)> {
    let mut rows: Vec<SparseRow> = (0..m.rows)
        .map(|r| m.row(r).iter().enumerate().filter(|(_, &x)| x != 0).map(|(c, &x)| (c, x)).collect())
        .collect();
    let mut used_cols = vec![false; m.cols];
    let mut pivots = 0;
    for (col, used) in used_cols.iter_mut().enumerate() {
        let entry = |r: &SparseRow| r.binary_search_by_key(&col, |e| e.0).ok().map(|k| r[k].1);
        let Some(p) = (0..rows.len())
            .filter(|&r| matches!(entry(&rows[r]), Some(1 | -1)))
            .min_by_key(|&r| rows[r].len())
        else {
            continue;
        };
        let pivot = rows.swap_remove(p);
        let sign = entry(&pivot).expect("pivot entry");
        for row in rows.iter_mut() {
            if let Some(x) = entry(row) {
                *row = axpy(row, x * sign, &pivot)?;
            }
        }
        *used = true;
        pivots += 1;
    }
    let keep: Vec<usize> = (0..m.cols).filter(|&c| !used_cols[c]).collect();
    let dense: Vec<Vec<i64>> = rows
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let mut d = vec![0; keep.len()];
            for &(c, x) in r {
                let k = keep.binary_search(&c).expect("pivot columns are cleared");
                d[k] = x;
            }
            d
        })
        .collect();
    let residual = if dense.is_empty() {
        Matrix::zeros(0, keep.len())
    } else {
        Matrix::from_rows(&dense)
    };
    Some((pivots, residual))
}
