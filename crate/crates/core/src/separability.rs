//! Separability via normalized coproducts, and the characteristic-zero
//! semisimplicity test by the trace form.

use std::sync::Arc;

use crate::algebra::{Algebra, Tensor2};
use crate::error::{Error, Result};
use crate::frobenius::{centralizer_echelon, Coproduct};
use crate::linalg::{particular_solution, rank, Matrix};
use crate::scalar::Field;

/// Field-dependent facts that qualify a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldNotes {
    /// The trace form decides semisimplicity over this field.
    pub char_zero_trace_criterion: bool,
    /// A separable algebra is semisimple; holds over every field.
    pub separable_implies_semisimple: bool,
}

impl FieldNotes {
    pub fn for_field(field: Field) -> Self {
        FieldNotes {
            char_zero_trace_criterion: field.characteristic() == 0,
            separable_implies_semisimple: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SeparabilityVerdict {
    pub separable: bool,
    /// A separability element `e`: invariant, `m(e) = 1`, `e e = e`.
    pub certificate: Option<Tensor2>,
    pub notes: FieldNotes,
}

/// Solves `{T invariant, m(T) = 1}` in one affine system. The returned
/// solution has every free variable set to zero.
pub fn normalized_coproduct(a: &Arc<Algebra>) -> Option<Coproduct> {
    let n = a.dim();
    let field = a.field();
    let rhs = n * n;
    let mut e = centralizer_echelon(a, 1);
    let unit = a.unit();
    for m in 0..n {
        let mut row: Vec<_> = a
            .table()
            .iter()
            .filter_map(|(&(i, j), prod)| {
                prod.iter()
                    .find(|(p, _)| *p == m)
                    .map(|(_, c)| (i * n + j, c.clone()))
            })
            .collect();
        if !unit.coords()[m].is_zero() {
            row.push((rhs, unit.coords()[m].clone()));
        }
        e.insert(&row);
    }
    let x = particular_solution(&e)?;
    let t = Tensor2::from_flat(field, n, x).expect("square shape");
    let d = Coproduct::new(Arc::clone(a), t).expect("solution of the centralizer system");
    debug_assert!(d.is_normalized());
    Some(d)
}

pub fn is_separable(a: &Arc<Algebra>) -> Result<SeparabilityVerdict> {
    let notes = FieldNotes::for_field(a.field());
    let Some(d) = normalized_coproduct(a) else {
        return Ok(SeparabilityVerdict {
            separable: false,
            certificate: None,
            notes,
        });
    };
    let e = d.delta_one().clone();
    if a.contract(&e)? != a.unit() {
        return Err(Error::InternalConsistency("normalized solution has m(e) != 1".into()));
    }
    if a.enveloping_product(&e, &e)? != e {
        return Err(Error::InternalConsistency(
            "separability element is not idempotent".into(),
        ));
    }
    Ok(SeparabilityVerdict {
        separable: true,
        certificate: Some(e),
        notes,
    })
}

/// Whether `m ∘ Δ = id`. Given invariance this reduces to `m(Δ(1)) = 1`; the
/// full identity on the basis is asserted as well.
pub fn is_normalized(a: &Algebra, d: &Coproduct) -> bool {
    if **d.algebra() != *a {
        return false;
    }
    if a.contract(d.delta_one()).expect("same algebra") != a.unit() {
        return false;
    }
    for k in 0..a.dim() {
        let bk = a.basis(k);
        let image = a.contract(&d.apply(&bk).expect("same algebra")).expect("same algebra");
        assert_eq!(image, bk, "m(Δ(b{k})) != b{k} although m(Δ(1)) = 1");
    }
    true
}

/// `G_ij = trace(L_{b_i b_j})`.
pub fn trace_form(a: &Algebra) -> Matrix {
    let n = a.dim();
    let field = a.field();
    let mut traces = vec![field.zero(); n];
    for (&(x, m), prod) in a.table() {
        if let Some((_, c)) = prod.iter().find(|(p, _)| *p == m) {
            traces[x] += c;
        }
    }
    let mut g = Matrix::zeros(field, n, n);
    for (&(i, j), prod) in a.table() {
        let mut v = field.zero();
        for (p, c) in prod {
            v += &(c * &traces[*p]);
        }
        g.set(i, j, v);
    }
    g
}

/// Semisimplicity over `Q`: the trace form is nondegenerate.
pub fn semisimple_char0(a: &Algebra) -> Result<bool> {
    if a.field().characteristic() != 0 {
        return Err(Error::UnsupportedField(a.field()));
    }
    Ok(rank(&trace_form(a)) == a.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use crate::zoo;

    const Q: Field = Field::Rational;

    fn arc(a: Algebra) -> Arc<Algebra> {
        Arc::new(a)
    }

    #[test]
    fn matrix_algebra_witness() {
        for n in 2..4 {
            let a = arc(zoo::matrix_algebra(Q, n).unwrap());
            let found = normalized_coproduct(&a).unwrap();
            assert!(is_normalized(&a, &found));
            let terms: Vec<_> = (0..n)
                .flat_map(|i| (0..n).map(move |k| (i * n + k, k * n + i, q(1, n as i64))))
                .collect();
            let t = Tensor2::from_terms(Q, n * n, &terms).unwrap();
            let d = Coproduct::new(Arc::clone(&a), t).unwrap();
            assert!(is_normalized(&a, &d));
        }
    }

    #[test]
    fn dual_numbers_are_not_separable() {
        let a = arc(zoo::truncated_polynomial(Q, 1).unwrap());
        assert!(normalized_coproduct(&a).is_none());
        let v = is_separable(&a).unwrap();
        assert!(!v.separable && v.certificate.is_none());
        assert!(!semisimple_char0(&a).unwrap());
        assert_eq!(
            trace_form(&a),
            Matrix::from_i64(Q, &[&[2, 0], &[0, 0]]).unwrap()
        );
    }

    #[test]
    fn cyclic_three_witness() {
        let a = arc(zoo::cyclic_group_algebra(Q, 3).unwrap());
        let v = is_separable(&a).unwrap();
        assert!(v.separable);
        let terms: Vec<_> = (0..3).map(|k| (k, (3 - k) % 3, q(1, 3))).collect();
        let t = Tensor2::from_terms(Q, 3, &terms).unwrap();
        let d = Coproduct::new(Arc::clone(&a), t.clone()).unwrap();
        assert!(is_normalized(&a, &d));
        assert_eq!(a.enveloping_product(&t, &t).unwrap(), t);
    }

    #[test]
    fn group_algebras_in_positive_characteristic() {
        let f3 = Field::prime(3).unwrap();
        let f2 = Field::prime(2).unwrap();
        let a = arc(zoo::cyclic_group_algebra(f3, 3).unwrap());
        assert!(!is_separable(&a).unwrap().separable);
        let b = arc(zoo::cyclic_group_algebra(f2, 3).unwrap());
        let v = is_separable(&b).unwrap();
        assert!(v.separable);
        assert!(!v.notes.char_zero_trace_criterion);
        assert!(matches!(semisimple_char0(&b), Err(Error::UnsupportedField(_))));
    }

    #[test]
    fn kz2_first_basis_coproduct_is_not_normalized() {
        let a = arc(zoo::cyclic_group_algebra(Q, 2).unwrap());
        let t = Tensor2::from_terms(Q, 2, &[(1, 0, Q.one()), (0, 1, Q.one())]).unwrap();
        let d = Coproduct::new(Arc::clone(&a), t.clone()).unwrap();
        assert!(!is_normalized(&a, &d));
        assert_eq!(a.contract(&t).unwrap(), a.basis(1).scale(&Q.from_i64(2)));
    }

    #[test]
    fn base_field_is_semisimple() {
        let k = zoo::matrix_algebra(Q, 1).unwrap();
        assert!(semisimple_char0(&k).unwrap());
        assert!(semisimple_char0(&zoo::matrix_algebra(Q, 2).unwrap()).unwrap());
    }

    #[test]
    fn path_algebras_are_not_separable() {
        let a = arc(zoo::linear_quiver_algebra(Q, 3).unwrap());
        assert!(!is_separable(&a).unwrap().separable);
        assert!(!semisimple_char0(&a).unwrap());
    }
}
