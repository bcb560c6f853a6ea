//! Nearly Frobenius coproducts. A coproduct is determined by `T = Δ(1)`,
//! which must satisfy `(b_k ⊗ 1) T = T (1 ⊗ b_k)` for every basis element;
//! then `Δ(a) = (a ⊗ 1) T`.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{direct_product, tensor_product, Algebra, AlgebraMorphism, DirectProduct, Element, Tensor2};
use crate::error::{Error, Result};
use crate::linalg::{row_space, to_dense, Echelon, SparseRow};
use crate::scalar::{Field, Scalar};

/// Rows of the centralizer system over the flattened coordinates `i * n + j`
/// of `T`: one row per `(k, m, l)`, stating `(L_k T - T R_k^T)[m][l] = 0`.
pub(crate) fn centralizer_rows(a: &Algebra) -> Vec<SparseRow> {
    let n = a.dim();
    let field = a.field();
    let mut rows: BTreeMap<(usize, usize, usize), BTreeMap<usize, Scalar>> = BTreeMap::new();
    let mut add = |key, col, c: &Scalar| {
        let slot = rows
            .entry(key)
            .or_insert_with(BTreeMap::new)
            .entry(col)
            .or_insert_with(|| field.zero());
        *slot += c;
    };
    for (&(x, y), prod) in a.table() {
        for (p, c) in prod {
            // b_x b_y = ... + c b_p.
            // As L_x: row (x, p, l) gets +c at (y, l).
            for l in 0..n {
                add((x, *p, l), y * n + l, c);
            }
            // As R_y: row (y, m, p) gets -c at (m, x).
            let neg = -c;
            for m in 0..n {
                add((y, m, *p), m * n + x, &neg);
            }
        }
    }
    rows.into_values()
        .map(|r| r.into_iter().filter(|(_, s)| !s.is_zero()).collect::<SparseRow>())
        .filter(|r| !r.is_empty())
        .collect()
}

pub(crate) fn centralizer_echelon(a: &Algebra, extra_cols: usize) -> Echelon {
    let n = a.dim();
    let mut e = Echelon::new(a.field(), n * n + extra_cols);
    for row in centralizer_rows(a) {
        if e.rank() == n * n {
            break;
        }
        e.insert(&row);
    }
    e
}

/// The space of all nearly Frobenius coproducts, as values at `1`.
#[derive(Clone, Debug)]
pub struct FrobeniusSpace {
    algebra: Arc<Algebra>,
    basis: Vec<Tensor2>,
}

impl FrobeniusSpace {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    /// Reduced row echelon basis over the flattened coordinates.
    pub fn basis(&self) -> &[Tensor2] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coproducts(&self) -> Vec<Coproduct> {
        self.basis
            .iter()
            .map(|t| Coproduct::new_unchecked(Arc::clone(&self.algebra), t.clone()))
            .collect()
    }

    pub fn contains(&self, t: &Tensor2) -> bool {
        let n = self.algebra.dim();
        if t.n() != n || t.field() != self.algebra.field() {
            return false;
        }
        let flat: Vec<Vec<Scalar>> = self.basis.iter().map(Tensor2::flatten).collect();
        row_space(t.field(), n * n, &flat).contains(&crate::linalg::to_sparse(&t.flatten()))
    }
}

pub fn frobenius_space(a: &Arc<Algebra>) -> FrobeniusSpace {
    let n = a.dim();
    let field = a.field();
    let kernel = centralizer_echelon(a, 0).kernel();
    let canonical = row_space(field, n * n, &kernel);
    let basis = canonical
        .rows()
        .iter()
        .map(|r| Tensor2::from_flat(field, n, to_dense(field, n * n, r)).expect("square shape"))
        .collect();
    FrobeniusSpace {
        algebra: Arc::clone(a),
        basis,
    }
}

/// Frobenius dimension: the dimension of the coproduct space.
pub fn frobdim(a: &Algebra) -> usize {
    let n = a.dim();
    n * n - centralizer_echelon(a, 0).rank()
}

/// A nearly Frobenius coproduct, stored as `Δ(1)`.
#[derive(Clone, Debug)]
pub struct Coproduct {
    algebra: Arc<Algebra>,
    delta_one: Tensor2,
    normalized: bool,
}

impl Coproduct {
    /// Accepts `delta_one` if it is invariant.
    pub fn new(algebra: Arc<Algebra>, delta_one: Tensor2) -> Result<Self> {
        algebra.check_tensor(&delta_one)?;
        if let Some(k) = first_non_invariant(&algebra, &delta_one) {
            return Err(Error::NotInvariant(k));
        }
        Ok(Coproduct::new_unchecked(algebra, delta_one))
    }

    fn new_unchecked(algebra: Arc<Algebra>, delta_one: Tensor2) -> Self {
        let normalized = algebra.contract(&delta_one).expect("shape checked") == algebra.unit();
        Coproduct {
            algebra,
            delta_one,
            normalized,
        }
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let t = Tensor2::zero(algebra.field(), algebra.dim());
        Coproduct::new_unchecked(algebra, t)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn delta_one(&self) -> &Tensor2 {
        &self.delta_one
    }

    /// Whether `m(Δ(1)) = 1`.
    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn apply(&self, a: &Element) -> Result<Tensor2> {
        apply_coproduct(self, a)
    }
}

fn first_non_invariant(a: &Algebra, t: &Tensor2) -> Option<usize> {
    (0..a.dim()).find(|&k| {
        let bk = a.basis(k);
        a.act_left(&bk, t).expect("shape checked") != a.act_right(t, &bk).expect("shape checked")
    })
}

/// `Δ(a) = (a ⊗ 1) Δ(1)`, cross-checked against `Δ(1) (1 ⊗ a)`.
pub fn apply_coproduct(d: &Coproduct, a: &Element) -> Result<Tensor2> {
    let left = d.algebra.act_left(a, &d.delta_one)?;
    let right = d.algebra.act_right(&d.delta_one, a)?;
    if left != right {
        return Err(Error::InternalConsistency(
            "coproduct is not a bimodule map on the given element".into(),
        ));
    }
    Ok(left)
}

/// First identity violated by a candidate `Δ(1)`.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CoproductViolation {
    #[error("tensor has size {found}, algebra has dimension {expected}")]
    Shape { expected: usize, found: usize },
    #[error("tensor and algebra are over different fields")]
    FieldMismatch,
    #[error("invariance fails: (b{k} ⊗ 1) T != T (1 ⊗ b{k})")]
    Invariance { k: usize },
    #[error("left linearity fails: Δ(b{i} b{j}) != (b{i} ⊗ 1) Δ(b{j})")]
    LeftLinearity { i: usize, j: usize },
    #[error("right linearity fails: Δ(b{i} b{j}) != Δ(b{i}) (1 ⊗ b{j})")]
    RightLinearity { i: usize, j: usize },
    #[error("internal consistency: coassociativity fails on b{k}")]
    Coassociativity { k: usize },
}

/// Checks invariance, then both bimodule diagrams on all basis pairs, then
/// coassociativity on every basis element.
pub fn verify_coproduct(a: &Algebra, t: &Tensor2) -> std::result::Result<(), CoproductViolation> {
    let n = a.dim();
    if t.n() != n {
        return Err(CoproductViolation::Shape {
            expected: n,
            found: t.n(),
        });
    }
    if t.field() != a.field() {
        return Err(CoproductViolation::FieldMismatch);
    }
    if let Some(k) = first_non_invariant(a, t) {
        return Err(CoproductViolation::Invariance { k });
    }

    let delta: Vec<Tensor2> = (0..n)
        .map(|i| a.act_left(&a.basis(i), t).expect("shape checked"))
        .collect();
    let delta_of = |x: &Element| -> Tensor2 {
        x.coords()
            .iter()
            .zip(&delta)
            .filter(|(c, _)| !c.is_zero())
            .fold(Tensor2::zero(a.field(), n), |acc, (c, d)| {
                acc.add(&d.scale(c)).expect("same shape")
            })
    };
    for i in 0..n {
        for j in 0..n {
            let (bi, bj) = (a.basis(i), a.basis(j));
            let lhs = delta_of(&a.multiply(&bi, &bj).expect("basis"));
            if lhs != a.act_left(&bi, &delta[j]).expect("shape") {
                return Err(CoproductViolation::LeftLinearity { i, j });
            }
            if lhs != a.act_right(&delta[i], &bj).expect("shape") {
                return Err(CoproductViolation::RightLinearity { i, j });
            }
        }
    }

    let terms: Vec<Vec<(usize, usize, Scalar)>> = delta.iter().map(Tensor2::terms).collect();
    for (k, dk) in terms.iter().enumerate() {
        let mut left: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        let mut right: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        for (i, j, d) in dk {
            for (p, q, c) in &terms[*i] {
                *left.entry((*p, *q, *j)).or_insert_with(|| a.field().zero()) += &(d * c);
            }
            for (p, q, c) in &terms[*j] {
                *right.entry((*i, *p, *q)).or_insert_with(|| a.field().zero()) += &(d * c);
            }
        }
        left.retain(|_, v| !v.is_zero());
        right.retain(|_, v| !v.is_zero());
        if left != right {
            return Err(CoproductViolation::Coassociativity { k });
        }
    }
    Ok(())
}

/// `Δ_B(1) = (f ⊗ f)(Δ_A(1))` along a verified isomorphism `f: A -> B`.
pub fn transport_coproduct(f: &AlgebraMorphism, d: &Coproduct) -> Result<Coproduct> {
    if !f.is_isomorphism() {
        return Err(Error::NotAnIsomorphism);
    }
    if **f.source() != *d.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let t = f.apply_tensor(&d.delta_one)?;
    verify_coproduct(f.target(), &t).map_err(|v| {
        Error::InternalConsistency(format!("transported coproduct fails verification: {v}"))
    })?;
    Coproduct::new(Arc::clone(f.target()), t)
}

/// Coproduct on `A × B` with `Δ(1) = Δ_A(1) + Δ_B(1)` embedded block-diagonally.
pub fn product_coproduct_on(p: &DirectProduct, da: &Coproduct, db: &Coproduct) -> Result<Coproduct> {
    let (a, b) = p.factors();
    if **a != *da.algebra || **b != *db.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let (na, nb) = (a.dim(), b.dim());
    let mut terms = Vec::new();
    terms.extend(da.delta_one.terms());
    terms.extend(db.delta_one.terms().into_iter().map(|(i, j, c)| (na + i, na + j, c)));
    let t = Tensor2::from_terms(a.field(), na + nb, &terms)?;
    checked(Arc::clone(&p.algebra), t)
}

/// Builds `A × B` and the product coproduct on it.
pub fn product_coproduct(da: &Coproduct, db: &Coproduct) -> Result<(DirectProduct, Coproduct)> {
    let p = direct_product(&da.algebra, &db.algebra)?;
    let d = product_coproduct_on(&p, da, db)?;
    Ok((p, d))
}

/// Coproduct on `A ⊗ B`: `Δ_A(1) ⊗ Δ_B(1)` with the middle factors swapped,
/// i.e. the Kronecker product in the basis `a_i ⊗ b_j -> i * n_B + j`.
pub fn tensor_coproduct_on(target: &Arc<Algebra>, da: &Coproduct, db: &Coproduct) -> Result<Coproduct> {
    let (na, nb) = (da.algebra.dim(), db.algebra.dim());
    if target.dim() != na * nb || target.field() != da.algebra.field() {
        return Err(Error::AlgebraMismatch);
    }
    let m = da.delta_one.matrix().kronecker(db.delta_one.matrix())?;
    checked(Arc::clone(target), Tensor2::from_matrix(m)?)
}

/// Builds `A ⊗ B` and the tensor coproduct on it.
pub fn tensor_coproduct(da: &Coproduct, db: &Coproduct) -> Result<(Arc<Algebra>, Coproduct)> {
    let ab = Arc::new(tensor_product(&da.algebra, &db.algebra)?);
    let d = tensor_coproduct_on(&ab, da, db)?;
    Ok((ab, d))
}

fn checked(algebra: Arc<Algebra>, t: Tensor2) -> Result<Coproduct> {
    verify_coproduct(&algebra, &t)
        .map_err(|v| Error::InternalConsistency(format!("constructed coproduct fails verification: {v}")))?;
    Coproduct::new(algebra, t)
}

/// Whether two lists of tensors span the same space.
pub fn tensors_span_equal(field: Field, n: usize, a: &[Tensor2], b: &[Tensor2]) -> bool {
    let flat = |ts: &[Tensor2]| ts.iter().map(Tensor2::flatten).collect::<Vec<_>>();
    crate::linalg::span_equal(field, n * n, &flat(a), &flat(b))
}

/// Rank of a list of tensors.
pub fn tensor_rank(field: Field, n: usize, ts: &[Tensor2]) -> usize {
    let flat: Vec<_> = ts.iter().map(Tensor2::flatten).collect();
    row_space(field, n * n, &flat).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    const Q: Field = Field::Rational;

    fn arc(a: Algebra) -> Arc<Algebra> {
        Arc::new(a)
    }

    #[test]
    fn base_field_has_one_coproduct() {
        let k = arc(zoo::matrix_algebra(Q, 1).unwrap());
        let e = frobenius_space(&k);
        assert_eq!(e.dim(), 1);
        assert_eq!(e.basis()[0], Tensor2::from_terms(Q, 1, &[(0, 0, Q.one())]).unwrap());
        assert_eq!(frobdim(&k), 1);
    }

    #[test]
    fn a2_generator() {
        let a = arc(zoo::linear_quiver_algebra(Q, 2).unwrap());
        let e = frobenius_space(&a);
        assert_eq!(e.dim(), 1);
        // eta ⊗ e1 + e2 ⊗ eta with basis e1, e2, eta.
        let g = Tensor2::from_terms(Q, 3, &[(2, 0, Q.one()), (1, 2, Q.one())]).unwrap();
        assert!(tensors_span_equal(Q, 3, e.basis(), &[g]));
    }

    #[test]
    fn cyclic_three_matches_closed_form() {
        let a = arc(zoo::cyclic_group_algebra(Q, 3).unwrap());
        let e = frobenius_space(&a);
        let closed: Vec<Tensor2> = (1..=3)
            .map(|k| {
                let terms: Vec<_> = (1..=3).map(|i| (i % 3, (3 + k - i) % 3, Q.one())).collect();
                Tensor2::from_terms(Q, 3, &terms).unwrap()
            })
            .collect();
        assert!(tensors_span_equal(Q, 3, e.basis(), &closed));
    }

    #[test]
    fn apply_in_kz2() {
        let a = arc(zoo::cyclic_group_algebra(Q, 2).unwrap());
        let t = Tensor2::from_terms(Q, 2, &[(1, 1, Q.one()), (0, 0, Q.one())]).unwrap();
        let d = Coproduct::new(Arc::clone(&a), t.clone()).unwrap();
        assert_eq!(d.apply(&a.unit()).unwrap(), t);
        let expect = Tensor2::from_terms(Q, 2, &[(0, 1, Q.one()), (1, 0, Q.one())]).unwrap();
        assert_eq!(d.apply(&a.basis(1)).unwrap(), expect);
    }

    #[test]
    fn a3_generator_on_middle_vertex() {
        let a = arc(zoo::linear_quiver_algebra(Q, 3).unwrap());
        let e = frobenius_space(&a);
        assert_eq!(e.dim(), 1);
        let d = &e.coproducts()[0];
        // Basis e1 e2 e3 a b ab: Δ(e2) is a multiple of b ⊗ a.
        let img = d.apply(&a.basis(1)).unwrap();
        let terms = img.terms();
        assert_eq!(terms.len(), 1);
        assert_eq!((terms[0].0, terms[0].1), (4, 3));
    }

    #[test]
    fn one_tensor_one_is_not_invariant_in_kz2() {
        let a = zoo::cyclic_group_algebra(Q, 2).unwrap();
        let t = Tensor2::from_terms(Q, 2, &[(0, 0, Q.one())]).unwrap();
        assert_eq!(verify_coproduct(&a, &t), Err(CoproductViolation::Invariance { k: 1 }));
        assert!(matches!(Coproduct::new(arc(a), t), Err(Error::NotInvariant(1))));
    }

    #[test]
    fn shape_and_field_violations() {
        let a = zoo::cyclic_group_algebra(Q, 2).unwrap();
        assert_eq!(
            verify_coproduct(&a, &Tensor2::zero(Q, 3)),
            Err(CoproductViolation::Shape { expected: 2, found: 3 })
        );
        let f5 = Field::prime(5).unwrap();
        assert_eq!(
            verify_coproduct(&a, &Tensor2::zero(f5, 2)),
            Err(CoproductViolation::FieldMismatch)
        );
    }

    #[test]
    fn basis_tensors_verify() {
        for a in [
            zoo::matrix_algebra(Q, 2).unwrap(),
            zoo::truncated_polynomial(Q, 3).unwrap(),
            zoo::linear_quiver_algebra(Q, 3).unwrap(),
            zoo::cyclic_group_algebra(Field::prime(3).unwrap(), 3).unwrap(),
        ] {
            let a = arc(a);
            for t in frobenius_space(&a).basis() {
                assert_eq!(verify_coproduct(&a, t), Ok(()));
            }
        }
    }

    #[test]
    fn frobdim_agrees_with_space() {
        for n in 1..5 {
            let a = arc(zoo::truncated_polynomial(Q, n).unwrap());
            assert_eq!(frobdim(&a), frobenius_space(&a).dim());
            assert_eq!(frobdim(&a), n + 1);
        }
    }

    #[test]
    fn product_of_base_fields() {
        let k = arc(zoo::matrix_algebra(Q, 1).unwrap());
        let d = frobenius_space(&k).coproducts().remove(0);
        let (_, p) = product_coproduct(&d, &d).unwrap();
        let expect = Tensor2::from_terms(Q, 2, &[(0, 0, Q.one()), (1, 1, Q.one())]).unwrap();
        assert_eq!(p.delta_one(), &expect);

        let z = Coproduct::zero(Arc::clone(&k));
        let (_, p) = product_coproduct(&z, &z).unwrap();
        assert!(p.delta_one().is_zero());
    }

    #[test]
    fn tensor_with_base_field_collapses() {
        let k = arc(zoo::matrix_algebra(Q, 1).unwrap());
        let a = arc(zoo::cyclic_group_algebra(Q, 3).unwrap());
        let one = frobenius_space(&k).coproducts().remove(0);
        for d in frobenius_space(&a).coproducts() {
            let (_, t) = tensor_coproduct(&d, &one).unwrap();
            assert_eq!(t.delta_one(), d.delta_one());
        }
    }

    #[test]
    fn transport_requires_isomorphism() {
        let a = arc(zoo::cyclic_group_algebra(Q, 2).unwrap());
        let p = direct_product(&a, &a).unwrap();
        let d = frobenius_space(&a).coproducts().remove(0);
        assert!(matches!(transport_coproduct(&p.left, &d), Err(Error::NotAnIsomorphism)));
    }
}
