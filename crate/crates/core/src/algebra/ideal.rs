use std::sync::Arc;

use super::{check_morphism, Algebra, AlgebraMorphism, Element};
use crate::error::{Error, Result};
use crate::linalg::{to_dense, to_sparse, Echelon, Matrix};
use crate::scalar::{Field, Scalar};

/// A subspace of an algebra, stored as its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: Field, ambient: usize, vectors: &[Element]) -> Result<Self> {
        let mut e = Echelon::new(field, ambient);
        for v in vectors {
            if v.coords().len() != ambient || v.coords().iter().any(|s| s.field() != field) {
                return Err(Error::AlgebraMismatch);
            }
            e.insert(&to_sparse(v.coords()));
        }
        Ok(Subspace::from_echelon(&e))
    }

    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn from_echelon(e: &Echelon) -> Self {
        Subspace {
            field: e.field(),
            ambient: e.cols(),
            basis: e.dense_rows(),
            pivots: e.pivots(),
        }
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.field, self.ambient);
        for v in &self.basis {
            e.insert(&to_sparse(v));
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> Vec<Element> {
        self.basis.iter().cloned().map(Element::new).collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &Element) -> bool {
        self.echelon().contains(&to_sparse(v.coords()))
    }
}

/// Smallest two-sided ideal containing `generators`, by saturating the span
/// under left and right multiplication by basis elements.
pub fn ideal_closure(a: &Algebra, generators: &[Element]) -> Result<Subspace> {
    for g in generators {
        a.check_element(g)?;
    }
    let n = a.dim();
    let mut space = Echelon::new(a.field(), n);
    let mut queue: Vec<Vec<Scalar>> = generators.iter().map(|g| g.coords().to_vec()).collect();
    while let Some(v) = queue.pop() {
        if !space.insert(&to_sparse(&v)) {
            continue;
        }
        for k in 0..n {
            let bk = a.basis(k);
            queue.push(a.mul_coords(bk.coords(), &v));
            queue.push(a.mul_coords(&v, bk.coords()));
        }
    }
    Ok(Subspace::from_echelon(&space))
}

pub fn is_two_sided_ideal(a: &Algebra, j: &Subspace) -> bool {
    if j.ambient != a.dim() || j.field != a.field() {
        return false;
    }
    let e = j.echelon();
    j.basis.iter().all(|v| {
        (0..a.dim()).all(|k| {
            let bk = a.basis(k);
            e.contains(&to_sparse(&a.mul_coords(bk.coords(), v)))
                && e.contains(&to_sparse(&a.mul_coords(v, bk.coords())))
        })
    })
}

/// `A / J` together with the verified projection `A -> A/J`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Arc<Algebra>,
    pub projection: AlgebraMorphism,
    /// Indices of the basis elements of `A` that represent the quotient
    /// basis, in order.
    pub representatives: Vec<usize>,
}

/// Quotient by a two-sided ideal. The quotient basis is represented by the
/// basis elements of `A` at the non-pivot coordinates of `J`'s echelon basis.
pub fn quotient(a: &Arc<Algebra>, j: &Subspace) -> Result<Quotient> {
    if j.ambient != a.dim() || j.field != a.field() {
        return Err(Error::AlgebraMismatch);
    }
    if !is_two_sided_ideal(a, j) {
        return Err(Error::NotAnIdeal);
    }
    let n = a.dim();
    let field = a.field();
    let keep: Vec<usize> = (0..n).filter(|c| !j.pivots.contains(c)).collect();
    if keep.is_empty() {
        return Err(Error::InvalidInput(
            "quotient by the whole algebra is the zero ring".into(),
        ));
    }
    let mut position = vec![None; n];
    for (new, &old) in keep.iter().enumerate() {
        position[old] = Some(new);
    }

    // Row r of J has a 1 at its pivot p and otherwise only non-pivot entries,
    // so b_p = -sum_c J[r][c] b_c modulo J.
    let m = keep.len();
    let mut projection = Matrix::zeros(field, m, n);
    for (old, pos) in position.iter().enumerate() {
        if let Some(new) = pos {
            projection.set(*new, old, field.one());
        }
    }
    for (row, &p) in j.basis.iter().zip(&j.pivots) {
        for (c, s) in row.iter().enumerate() {
            if let (Some(new), false) = (position[c], s.is_zero()) {
                projection.set(new, p, -s);
            }
        }
    }

    let project = |v: &[Scalar]| -> Vec<Scalar> { projection.mul_vec(v).expect("shape") };
    let mut table = Vec::new();
    for (x, &i) in keep.iter().enumerate() {
        for (y, &k) in keep.iter().enumerate() {
            let prod = to_dense(field, n, a.product_of(i, k));
            table.push(((x, y), to_sparse(&project(&prod))));
        }
    }
    let unit = project(a.unit().coords());
    let labels = keep.iter().map(|&i| a.labels()[i].clone()).collect();
    let q = Arc::new(Algebra::build(field, m, table, unit, labels)?);
    let projection = check_morphism(a, &q, projection)?;
    Ok(Quotient {
        algebra: q,
        projection,
        representatives: keep,
    })
}
