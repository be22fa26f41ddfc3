//! Exact linear algebra over the integers.
//!
//! Everything here works with row vectors: a matrix `m` with `r` rows and `c`
//! columns is the map `Z^r -> Z^c`, `v -> v * m`. Kernels are left kernels and
//! lattices are spanned by rows.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("entry count {found} does not match a {rows}x{cols} matrix")]
    Shape { rows: usize, cols: usize, found: usize },
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::Shape { rows, cols, found: entries.len() });
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, found: row.len() });
            }
            entries.extend(row);
        }
        Ok(IntMatrix { rows: n, cols, entries })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_rows(cols, data).expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    /// `v * self`.
    pub fn apply_left(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        if v.len() != self.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.rows, found: v.len() });
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (r, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (c, slot) in out.iter_mut().enumerate() {
                let e = self.get(r, c);
                if !e.is_zero() {
                    *slot += coeff * e;
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "IntMatrix{:?}", rows)
    }
}

/// A sublattice of `Z^ambient_dim` in canonical row-style Hermite normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lattice {
    ambient_dim: usize,
    basis: IntMatrix,
}

impl Lattice {
    pub fn zero(ambient_dim: usize) -> Self {
        Lattice { ambient_dim, basis: IntMatrix::zeros(0, ambient_dim) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.rows() == 0
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<BigInt>> {
        self.basis.row_vecs()
    }

    /// Column of the leading entry of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.basis.rows())
            .map(|r| {
                self.basis
                    .row(r)
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("HNF rows are nonzero")
            })
            .collect()
    }

    /// Product of the pivots: the index of this lattice in its saturation
    /// intersected with the pivot coordinates. Equals 1 for saturated kernels.
    pub fn pivot_product(&self) -> BigInt {
        let mut p = BigInt::one();
        for (r, c) in self.pivots().into_iter().enumerate() {
            p *= self.basis.get(r, c);
        }
        p
    }
}

fn sub_scaled(target: &mut [BigInt], src: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

/// Row-reduces `rows` to Hermite normal form with respect to the first
/// `pivot_cols` columns, applying every row operation to the whole row.
/// Returns the pivot columns; rows past `pivots.len()` are zero on the
/// pivoting columns afterwards.
fn echelon(rows: &mut [Vec<BigInt>], pivot_cols: usize) -> Vec<usize> {
    let n = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == n {
            break;
        }
        loop {
            let best = (r..n)
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()));
            let Some(p) = best else { break };
            rows.swap(r, p);
            let (head, tail) = rows.split_at_mut(r + 1);
            let prow = &head[r];
            let mut clean = true;
            for row in tail.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let q = row[c].div_floor(&prow[c]);
                sub_scaled(row, prow, &q);
                if !row[c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if rows.get(r).is_none_or(|row| row[c].is_zero()) {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let prow = &tail[0];
        for row in head.iter_mut() {
            let q = row[c].div_floor(&prow[c]);
            sub_scaled(row, prow, &q);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn lattice_from_rows(ambient_dim: usize, mut rows: Vec<Vec<BigInt>>) -> Lattice {
    let pivots = echelon(&mut rows, ambient_dim);
    rows.truncate(pivots.len());
    Lattice {
        ambient_dim,
        basis: IntMatrix::from_rows(ambient_dim, rows).expect("row width preserved"),
    }
}

/// Canonical basis of the row lattice of `m`.
pub fn hermite_normal_form(m: &IntMatrix) -> Lattice {
    lattice_from_rows(m.cols(), m.row_vecs())
}

/// Lattice spanned by arbitrary integer vectors of length `ambient_dim`.
pub fn span(ambient_dim: usize, vectors: Vec<Vec<BigInt>>) -> Result<Lattice, LinalgError> {
    for v in &vectors {
        if v.len() != ambient_dim {
            return Err(LinalgError::DimensionMismatch { expected: ambient_dim, found: v.len() });
        }
    }
    Ok(lattice_from_rows(ambient_dim, vectors))
}

fn augmented(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let n = m.rows();
    (0..n)
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.extend((0..n).map(|j| if j == r { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect()
}

/// Full integer left kernel `{v : v * m = 0}`.
pub fn kernel_basis(m: &IntMatrix) -> Lattice {
    let mut rows = augmented(m);
    let rank = echelon(&mut rows, m.cols()).len();
    let kernel: Vec<Vec<BigInt>> = rows.into_iter().skip(rank).map(|row| row[m.cols()..].to_vec()).collect();
    lattice_from_rows(m.rows(), kernel)
}

/// Finds an integer `x` with `x * m = b`, if one exists.
pub fn solve_left(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
    if b.len() != m.cols() {
        return Err(LinalgError::DimensionMismatch { expected: m.cols(), found: b.len() });
    }
    let mut rows = augmented(m);
    let pivots = echelon(&mut rows, m.cols());
    let mut rest = b.to_vec();
    let mut x = vec![BigInt::zero(); m.rows()];
    for (r, &c) in pivots.iter().enumerate() {
        let (q, rem) = rest[c].div_rem(&rows[r][c]);
        if !rem.is_zero() {
            return Ok(None);
        }
        sub_scaled(&mut rest, &rows[r][..m.cols()], &q);
        for (xi, t) in x.iter_mut().zip(&rows[r][m.cols()..]) {
            if !t.is_zero() {
                *xi += &q * t;
            }
        }
    }
    Ok(rest.iter().all(Zero::is_zero).then_some(x))
}

pub fn rank(m: &IntMatrix) -> usize {
    hermite_normal_form(m).rank()
}

pub fn lattice_member(v: &[BigInt], l: &Lattice) -> Result<bool, LinalgError> {
    if v.len() != l.ambient_dim {
        return Err(LinalgError::DimensionMismatch { expected: l.ambient_dim, found: v.len() });
    }
    let mut rest = v.to_vec();
    for (r, c) in l.pivots().into_iter().enumerate() {
        let row = l.basis.row(r);
        let (q, rem) = rest[c].div_rem(&row[c]);
        if !rem.is_zero() {
            return Ok(false);
        }
        sub_scaled(&mut rest, row, &q);
    }
    Ok(rest.iter().all(Zero::is_zero))
}

pub fn lattice_sum(a: &Lattice, b: &Lattice) -> Result<Lattice, LinalgError> {
    if a.ambient_dim != b.ambient_dim {
        return Err(LinalgError::DimensionMismatch { expected: a.ambient_dim, found: b.ambient_dim });
    }
    let mut rows = a.basis_rows();
    rows.extend(b.basis_rows());
    Ok(lattice_from_rows(a.ambient_dim, rows))
}
