//! Finite-dimensional unital associative algebras given by structure
//! constants.
//!
//! `b_i * b_j = sum_k c_ij^k b_k`. The table is stored sparsely and every
//! constructor validates associativity on all `n^3` basis triples plus the
//! unit law, so an [`Algebra`] value is always a genuine unital associative
//! algebra.

mod ideal;
mod morphism;
mod products;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{check_field, to_dense, to_sparse, Matrix, SparseRow};
use crate::scalar::{Field, Scalar};

pub use ideal::{ideal_closure, is_two_sided_ideal, quotient, Quotient, Subspace};
pub use morphism::{check_morphism, AlgebraMorphism};
pub use products::{direct_product, tensor_product, DirectProduct};

/// Sparse structure constants: `(i, j) -> b_i b_j` as a sparse coordinate
/// vector. Missing keys mean a zero product.
pub type Table = BTreeMap<(usize, usize), SparseRow>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    dim: usize,
    table: Table,
    unit: Vec<Scalar>,
    labels: Vec<String>,
}

/// Coordinates of an element in the algebra basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    coords: Vec<Scalar>,
}

impl Element {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Element { coords }
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        Element::new(self.coords.iter().map(|c| c * s).collect())
    }
}

/// An element of `A ⊗ A`: entry `(i, j)` is the coefficient of `b_i ⊗ b_j`.
/// Flattened coordinates use the index `i * n + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor2 {
    matrix: Matrix,
}

impl Tensor2 {
    pub fn from_matrix(matrix: Matrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        Ok(Tensor2 { matrix })
    }

    pub fn zero(field: Field, n: usize) -> Self {
        Tensor2 {
            matrix: Matrix::zeros(field, n, n),
        }
    }

    /// Sum of `c * b_i ⊗ b_j` over the given terms.
    pub fn from_terms(field: Field, n: usize, terms: &[(usize, usize, Scalar)]) -> Result<Self> {
        let mut t = Tensor2::zero(field, n);
        for (i, j, c) in terms {
            if *i >= n || *j >= n {
                return Err(Error::IndexOutOfRange {
                    index: (*i).max(*j),
                    dim: n,
                });
            }
            let v = t.matrix.get(*i, *j).checked_add(c)?;
            t.matrix.set(*i, *j, v);
        }
        Ok(t)
    }

    /// `a ⊗ b`.
    pub fn elementary(a: &Element, b: &Element) -> Self {
        let n = a.coords.len();
        let field = a.coords[0].field();
        let mut t = Tensor2::zero(field, n);
        for (i, x) in a.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.coords.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                t.matrix.set(i, j, x * y);
            }
        }
        t
    }

    pub fn from_flat(field: Field, n: usize, flat: Vec<Scalar>) -> Result<Self> {
        Ok(Tensor2 {
            matrix: Matrix::new(field, n, n, flat)?,
        })
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Scalar {
        self.matrix.get(i, j)
    }

    pub fn flatten(&self) -> Vec<Scalar> {
        self.matrix.entries().to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn add(&self, other: &Tensor2) -> Result<Tensor2> {
        Ok(Tensor2 {
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    pub fn scale(&self, s: &Scalar) -> Tensor2 {
        Tensor2 {
            matrix: self.matrix.scale(s),
        }
    }

    /// Nonzero `(i, j, coeff)` triples in row-major order.
    pub fn terms(&self) -> Vec<(usize, usize, Scalar)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let c = self.coeff(i, j);
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }
}

impl Algebra {
    /// Validating constructor. `table` entries may repeat a key (they are
    /// summed) and may contain zeros (they are dropped). Empty `labels` means
    /// default labels `b0, b1, ...`.
    pub fn build(
        field: Field,
        dim: usize,
        table: impl IntoIterator<Item = ((usize, usize), Vec<(usize, Scalar)>)>,
        unit: Vec<Scalar>,
        labels: Vec<String>,
    ) -> Result<Algebra> {
        if dim == 0 {
            return Err(Error::InvalidInput("algebra dimension must be at least 1".into()));
        }
        let labels = if labels.is_empty() {
            (0..dim).map(|i| format!("b{i}")).collect()
        } else {
            labels
        };
        if labels.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: format!("{dim} labels"),
                found: format!("{} labels", labels.len()),
            });
        }
        if let Some(bad) = labels
            .iter()
            .find(|l| l.is_empty() || l.chars().any(char::is_whitespace))
        {
            return Err(Error::InvalidInput(format!("invalid basis label `{bad}`")));
        }
        if unit.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: format!("unit of length {dim}"),
                found: format!("length {}", unit.len()),
            });
        }
        check_field(field, &unit)?;

        let mut dense: BTreeMap<(usize, usize), Vec<Scalar>> = BTreeMap::new();
        for ((i, j), terms) in table {
            for idx in [i, j] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            let slot = dense
                .entry((i, j))
                .or_insert_with(|| vec![field.zero(); dim]);
            for (k, c) in terms {
                if k >= dim {
                    return Err(Error::IndexOutOfRange { index: k, dim });
                }
                slot[k] = slot[k].checked_add(&c)?;
            }
        }
        let table: Table = dense
            .into_iter()
            .map(|(key, v)| (key, to_sparse(&v)))
            .filter(|(_, v)| !v.is_empty())
            .collect();

        let algebra = Algebra {
            field,
            dim,
            table,
            unit,
            labels,
        };
        algebra.validate()?;
        Ok(algebra)
    }

    /// Full associativity and unit check.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = self.product_of(i, j);
                for k in 0..n {
                    let left = self.mul_sparse_basis(ij, k);
                    let jk = self.product_of(j, k);
                    let right = self.mul_basis_sparse(i, jk);
                    if left != right {
                        return Err(Error::AssociativityViolation {
                            i,
                            j,
                            k,
                            left: to_dense(self.field, n, &left),
                            right: to_dense(self.field, n, &right),
                        });
                    }
                }
            }
        }
        let unit = to_sparse(&self.unit);
        for i in 0..n {
            let expect = vec![(i, self.field.one())];
            if self.mul_sparse_basis(&unit, i) != expect || self.mul_basis_sparse(i, &unit) != expect
            {
                return Err(Error::UnitViolation(i));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    /// `b_i b_j` as a sparse vector.
    pub fn product_of(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        self.table.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    pub fn unit(&self) -> Element {
        Element::new(self.unit.clone())
    }

    pub fn zero(&self) -> Element {
        Element::new(vec![self.field.zero(); self.dim])
    }

    pub fn basis(&self, i: usize) -> Element {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        Element::new(v)
    }

    /// Wraps coordinates after checking length and field.
    pub fn element(&self, coords: Vec<Scalar>) -> Result<Element> {
        let e = Element::new(coords);
        self.check_element(&e)?;
        Ok(e)
    }

    pub fn check_element(&self, e: &Element) -> Result<()> {
        if e.coords.len() != self.dim || e.coords.iter().any(|s| s.field() != self.field) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn check_tensor(&self, t: &Tensor2) -> Result<()> {
        if t.n() != self.dim || t.field() != self.field {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(Element::new(self.mul_coords(&x.coords, &y.coords)))
    }

    pub(crate) fn mul_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for (&(i, j), prod) in &self.table {
            let (a, b) = (&x[i], &y[j]);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let ab = a * b;
            for (k, c) in prod {
                out[*k] += &(&ab * c);
            }
        }
        out
    }

    /// `x * b_k` with `x` sparse.
    fn mul_sparse_basis(&self, x: &[(usize, Scalar)], k: usize) -> SparseRow {
        let mut out = vec![self.field.zero(); self.dim];
        for (m, a) in x {
            for (l, c) in self.product_of(*m, k) {
                out[*l] += &(a * c);
            }
        }
        to_sparse(&out)
    }

    /// `b_i * y` with `y` sparse.
    fn mul_basis_sparse(&self, i: usize, y: &[(usize, Scalar)]) -> SparseRow {
        let mut out = vec![self.field.zero(); self.dim];
        for (m, a) in y {
            for (l, c) in self.product_of(i, *m) {
                out[*l] += &(a * c);
            }
        }
        to_sparse(&out)
    }

    /// Matrix of `y -> x y`: column `i` holds the coordinates of `x b_i`.
    pub fn left_matrix(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(self.field, n, n);
        for (&(a, i), prod) in &self.table {
            if x[a].is_zero() {
                continue;
            }
            for (k, c) in prod {
                let v = m.get(*k, i) + &(&x[a] * c);
                m.set(*k, i, v);
            }
        }
        m
    }

    /// Matrix of `y -> y x`: column `j` holds the coordinates of `b_j x`.
    pub fn right_matrix(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(self.field, n, n);
        for (&(j, a), prod) in &self.table {
            if x[a].is_zero() {
                continue;
            }
            for (k, c) in prod {
                let v = m.get(*k, j) + &(&x[a] * c);
                m.set(*k, j, v);
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        self.table
            .iter()
            .all(|(&(i, j), v)| self.product_of(j, i) == v.as_slice())
    }

    /// `(a ⊗ 1) t`.
    pub fn act_left(&self, a: &Element, t: &Tensor2) -> Result<Tensor2> {
        self.check_element(a)?;
        self.check_tensor(t)?;
        Tensor2::from_matrix(self.left_matrix(&a.coords).mul(&t.matrix)?)
    }

    /// `t (1 ⊗ a)`.
    pub fn act_right(&self, t: &Tensor2, a: &Element) -> Result<Tensor2> {
        self.check_element(a)?;
        self.check_tensor(t)?;
        Tensor2::from_matrix(t.matrix.mul(&self.right_matrix(&a.coords).transpose())?)
    }

    /// Multiplication map `m: A ⊗ A -> A`.
    pub fn contract(&self, t: &Tensor2) -> Result<Element> {
        self.check_tensor(t)?;
        let mut out = vec![self.field.zero(); self.dim];
        for (&(i, j), prod) in &self.table {
            let c = t.coeff(i, j);
            if c.is_zero() {
                continue;
            }
            for (k, s) in prod {
                out[*k] += &(c * s);
            }
        }
        Ok(Element::new(out))
    }

    /// Product in `A ⊗ A^op`: `(a ⊗ b)(c ⊗ d) = ac ⊗ db`.
    pub fn enveloping_product(&self, s: &Tensor2, t: &Tensor2) -> Result<Tensor2> {
        self.check_tensor(s)?;
        self.check_tensor(t)?;
        let n = self.dim;
        let mut out = Tensor2::zero(self.field, n);
        let (s_terms, t_terms) = (s.terms(), t.terms());
        for (i, j, x) in &s_terms {
            for (k, l, y) in &t_terms {
                let ik = self.product_of(*i, *k);
                let lj = self.product_of(*l, *j);
                if ik.is_empty() || lj.is_empty() {
                    continue;
                }
                let xy = x * y;
                for (p, c) in ik {
                    for (q, d) in lj {
                        let v = out.coeff(*p, *q) + &(&xy * &(c * d));
                        out.matrix.set(*p, *q, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Relabels the basis: the new `b'_i` is the old `b_{perm[i]}`. Returns the
    /// new algebra together with the matrix of the identity map in
    /// old-to-new coordinates.
    pub fn permuted(&self, perm: &[usize]) -> Result<(Algebra, Matrix)> {
        let n = self.dim;
        let mut inverse = vec![usize::MAX; n];
        if perm.len() != n {
            return Err(Error::InvalidInput("permutation has the wrong length".into()));
        }
        for (new, &old) in perm.iter().enumerate() {
            if old >= n || inverse[old] != usize::MAX {
                return Err(Error::InvalidInput("not a permutation".into()));
            }
            inverse[old] = new;
        }
        let table = self.table.iter().map(|(&(i, j), prod)| {
            (
                (inverse[i], inverse[j]),
                prod.iter().map(|(k, c)| (inverse[*k], c.clone())).collect(),
            )
        });
        let unit = perm.iter().map(|&old| self.unit[old].clone()).collect();
        let labels = perm.iter().map(|&old| self.labels[old].clone()).collect();
        let permuted = Algebra::build(self.field, n, table, unit, labels)?;
        let mut f = Matrix::zeros(self.field, n, n);
        for (old, &new) in inverse.iter().enumerate() {
            f.set(new, old, self.field.one());
        }
        Ok((permuted, f))
    }

    /// Readable form of an element, e.g. `1/2*E11 + E22`.
    pub fn format_element(&self, e: &Element) -> String {
        format_terms(
            e.coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (c, self.labels[i].clone())),
        )
    }

    pub fn format_tensor(&self, t: &Tensor2) -> String {
        let terms = t.terms();
        format_terms(
            terms
                .iter()
                .map(|(i, j, c)| (c, format!("{}⊗{}", self.labels[*i], self.labels[*j]))),
        )
    }
}

fn format_terms<'a>(terms: impl Iterator<Item = (&'a Scalar, String)>) -> String {
    let parts: Vec<String> = terms
        .map(|(c, name)| {
            if c.is_one() {
                name
            } else {
                format!("{c}*{name}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "algebra over {} of dimension {}", self.field, self.dim)
    }
}
