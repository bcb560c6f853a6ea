//! Exact dense linear algebra over `Q` and `F_p`.
//!
//! The public surface is the dense [`Matrix`]. Elimination itself runs on an
//! incrementally maintained reduced row echelon basis of sparse rows
//! ([`Echelon`]); reduced rows of the systems built in this crate are very
//! sparse even when the matrices are not. The reduced row echelon form is
//! unique, so the result does not depend on row insertion order.
//!
//! Kernel bases are canonical: one vector per free column, in increasing
//! column order, with that free variable set to 1 and the other free
//! variables set to 0.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Sparse vector: `(column, value)` pairs, strictly increasing columns, no
/// stored zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                found: format!("{} entries", entries.len()),
            });
        }
        check_field(field, &entries)?;
        Ok(Matrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: format!("rows of length {cols}"),
                found: format!("row of length {}", bad.len()),
            });
        }
        Matrix::new(field, n, cols, rows.into_iter().flatten().collect())
    }

    /// Shorthand for small integer matrices in tests and constructors.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    /// Panics on a field mismatch or out-of-range position.
    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "matrix entry from another field");
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_field(rhs.field)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows", self.cols),
                found: format!("{} rows", rhs.rows),
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * rhs.cols + c] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: format!("vector of length {}", self.cols),
                found: format!("length {}", v.len()),
            });
        }
        check_field(self.field, v)?;
        Ok((0..self.rows)
            .map(|r| dot(self.row(r), v, self.field))
            .collect())
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_field(rhs.field)?;
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch {
                expected: format!("{}x{}", self.rows, self.cols),
                found: format!("{}x{}", rhs.rows, rhs.cols),
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Matrix { entries, ..*self })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            entries: self.entries.iter().map(|e| e * s).collect(),
            ..*self
        }
    }

    /// Kronecker product: entry `(i*p + k, j*q + l)` is `a_ij * b_kl`.
    pub fn kronecker(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_field(rhs.field)?;
        let (p, q) = (rhs.rows, rhs.cols);
        let mut out = Matrix::zeros(self.field, self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        let b = rhs.get(k, l);
                        if !b.is_zero() {
                            out.set(i * p + k, j * q + l, a * b);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub(crate) fn sparse_row(&self, r: usize) -> SparseRow {
        to_sparse(self.row(r))
    }

    fn same_field(&self, other: Field) -> Result<()> {
        if self.field == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field,
                right: other,
            })
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub(crate) fn check_field(field: Field, values: &[Scalar]) -> Result<()> {
    match values.iter().find(|s| s.field() != field) {
        Some(bad) => Err(Error::FieldMismatch {
            left: field,
            right: bad.field(),
        }),
        None => Ok(()),
    }
}

pub(crate) fn dot(a: &[Scalar], b: &[Scalar], field: Field) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

pub(crate) fn to_sparse(v: &[Scalar]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(i, s)| (i, s.clone()))
        .collect()
}

pub(crate) fn to_dense(field: Field, len: usize, v: &[(usize, Scalar)]) -> Vec<Scalar> {
    let mut out = vec![field.zero(); len];
    for (c, s) in v {
        out[*c] = s.clone();
    }
    out
}

/// `v - alpha * r` for sorted sparse rows.
fn sub_scaled(v: &[(usize, Scalar)], alpha: &Scalar, r: &[(usize, Scalar)]) -> SparseRow {
    let mut out = Vec::with_capacity(v.len() + r.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < r.len() {
        let vc = v.get(i).map_or(usize::MAX, |e| e.0);
        let rc = r.get(j).map_or(usize::MAX, |e| e.0);
        if vc < rc {
            out.push(v[i].clone());
            i += 1;
        } else if rc < vc {
            out.push((rc, -(alpha * &r[j].1)));
            j += 1;
        } else {
            let s = &v[i].1 - &(alpha * &r[j].1);
            if !s.is_zero() {
                out.push((vc, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn lookup(v: &[(usize, Scalar)], col: usize) -> Option<&Scalar> {
    v.binary_search_by_key(&col, |e| e.0).ok().map(|i| &v[i].1)
}

/// Reduced row echelon basis of a growing row space.
///
/// Rows are kept sorted by pivot column, each with a leading 1 and zeros in
/// every other pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    cols: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(field: Field, cols: usize) -> Self {
        Echelon {
            field,
            cols,
            rows: Vec::new(),
            pivot_row: vec![None; cols],
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|c| self.pivot_row[*c].is_none())
            .collect()
    }

    /// Remainder of `v` modulo the row space; it has no entries in pivot
    /// columns.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseRow {
        let hits: Vec<(usize, Scalar)> = v
            .iter()
            .filter_map(|(c, s)| self.pivot_row[*c].map(|r| (r, s.clone())))
            .collect();
        let mut out = v.to_vec();
        for (r, s) in hits {
            out = sub_scaled(&out, &s, &self.rows[r]);
        }
        out
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the row space. Returns whether the rank grew.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> bool {
        let w = self.reduce(v);
        let Some((lead, lead_val)) = w.first().cloned() else {
            return false;
        };
        let inv = lead_val.inv().expect("nonzero leading entry");
        let w: SparseRow = w.into_iter().map(|(c, s)| (c, &s * &inv)).collect();

        for row in &mut self.rows {
            if let Some(f) = lookup(row, lead).cloned() {
                *row = sub_scaled(row, &f, &w);
            }
        }
        let at = self.rows.partition_point(|r| r[0].0 < lead);
        self.rows.insert(at, w);
        for (i, r) in self.rows.iter().enumerate().skip(at) {
            self.pivot_row[r[0].0] = Some(i);
        }
        true
    }

    /// Canonical kernel basis of the system whose rows span this space.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for row in &self.rows {
                    if let Some(s) = lookup(row, f) {
                        v[row[0].0] = -s;
                    }
                }
                v
            })
            .collect()
    }

    pub fn to_matrix(&self, rows: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows.max(self.rank()), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for (c, s) in row {
                m.entries[i * self.cols + c] = s.clone();
            }
        }
        m
    }

    pub fn dense_rows(&self) -> Vec<Vec<Scalar>> {
        self.rows
            .iter()
            .map(|r| to_dense(self.field, self.cols, r))
            .collect()
    }
}

fn echelon_of(m: &Matrix) -> Echelon {
    let mut e = Echelon::new(m.field, m.cols);
    for r in 0..m.rows {
        e.insert(&m.sparse_row(r));
    }
    e
}

/// Result of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row echelon form, same shape as the input with zero rows last.
pub fn rref(m: &Matrix) -> Rref {
    let e = echelon_of(m);
    Rref {
        matrix: e.to_matrix(m.rows),
        pivots: e.pivots(),
        rank: e.rank(),
    }
}

pub fn rank(m: &Matrix) -> usize {
    echelon_of(m).rank()
}

pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    echelon_of(m).kernel()
}

/// Particular solution of `m x = b` with every free variable zero, or `None`
/// when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch {
            expected: format!("right-hand side of length {}", m.rows),
            found: format!("length {}", b.len()),
        });
    }
    check_field(m.field, b)?;
    let mut e = Echelon::new(m.field, m.cols + 1);
    for r in 0..m.rows {
        let mut row = m.sparse_row(r);
        if !b[r].is_zero() {
            row.push((m.cols, b[r].clone()));
        }
        e.insert(&row);
    }
    Ok(particular_solution(&e))
}

/// Reads a particular solution off an echelon basis of an augmented system
/// whose last column is the right-hand side.
pub(crate) fn particular_solution(e: &Echelon) -> Option<Vec<Scalar>> {
    let rhs = e.cols - 1;
    if e.pivot_row[rhs].is_some() {
        return None;
    }
    let mut x = vec![e.field.zero(); rhs];
    for row in &e.rows {
        if let Some(s) = lookup(row, rhs) {
            x[row[0].0] = s.clone();
        }
    }
    Some(x)
}

pub fn invert(m: &Matrix) -> Result<Option<Matrix>> {
    if m.rows != m.cols {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut e = Echelon::new(m.field, 2 * n);
    for r in 0..n {
        let mut row = m.sparse_row(r);
        row.push((n + r, m.field.one()));
        e.insert(&row);
    }
    // [m | I] always has rank n; m is invertible iff the pivots are 0..n.
    if e.pivots().into_iter().ne(0..n) {
        return Ok(None);
    }
    let mut inv = Matrix::zeros(m.field, n, n);
    for (i, row) in e.rows.iter().enumerate() {
        for (c, s) in row.iter().filter(|(c, _)| *c >= n) {
            inv.set(i, c - n, s.clone());
        }
    }
    Ok(Some(inv))
}

/// Whether two lists of vectors span the same subspace.
pub fn span_equal(field: Field, len: usize, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
    row_space(field, len, a).rows() == row_space(field, len, b).rows()
}

pub fn row_space(field: Field, len: usize, vectors: &[Vec<Scalar>]) -> Echelon {
    let mut e = Echelon::new(field, len);
    for v in vectors {
        e.insert(&to_sparse(v));
    }
    e
}
