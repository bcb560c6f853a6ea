use std::sync::Arc;

use super::{Algebra, AlgebraMorphism};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// `A × B` with basis `(a_i, 0)` for `i < n_A` followed by `(0, b_j)`.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub algebra: Arc<Algebra>,
    /// `a -> (a, 0)`; multiplicative but not unital.
    pub left: AlgebraMorphism,
    /// `b -> (0, b)`; multiplicative but not unital.
    pub right: AlgebraMorphism,
}

impl DirectProduct {
    pub fn factors(&self) -> (&Arc<Algebra>, &Arc<Algebra>) {
        (self.left.source(), self.right.source())
    }
}

fn same_field(a: &Algebra, b: &Algebra) -> Result<()> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch {
            left: a.field(),
            right: b.field(),
        });
    }
    Ok(())
}

pub fn direct_product(a: &Arc<Algebra>, b: &Arc<Algebra>) -> Result<DirectProduct> {
    same_field(a, b)?;
    let (na, nb) = (a.dim(), b.dim());
    let field = a.field();

    let table = a
        .table()
        .iter()
        .map(|(&key, v)| (key, v.clone()))
        .chain(b.table().iter().map(|(&(i, j), v)| {
            (
                (na + i, na + j),
                v.iter().map(|(k, c)| (na + k, c.clone())).collect(),
            )
        }))
        .collect::<Vec<_>>();
    let unit = a
        .unit()
        .into_coords()
        .into_iter()
        .chain(b.unit().into_coords())
        .collect();
    let labels = a
        .labels()
        .iter()
        .map(|l| format!("({l},0)"))
        .chain(b.labels().iter().map(|l| format!("(0,{l})")))
        .collect();
    let product = Arc::new(Algebra::build(field, na + nb, table, unit, labels)?);

    let mut left = Matrix::zeros(field, na + nb, na);
    for i in 0..na {
        left.set(i, i, field.one());
    }
    let mut right = Matrix::zeros(field, na + nb, nb);
    for j in 0..nb {
        right.set(na + j, j, field.one());
    }
    Ok(DirectProduct {
        left: AlgebraMorphism::inspect(Arc::clone(a), Arc::clone(&product), left)?,
        right: AlgebraMorphism::inspect(Arc::clone(b), Arc::clone(&product), right)?,
        algebra: product,
    })
}

/// `A ⊗ B` with basis `a_i ⊗ b_j` at index `i * n_B + j`.
pub fn tensor_product(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    same_field(a, b)?;
    let (na, nb) = (a.dim(), b.dim());
    let mut table = Vec::new();
    for (&(i, k), ab) in a.table() {
        for (&(j, l), bb) in b.table() {
            let mut prod = Vec::with_capacity(ab.len() * bb.len());
            for (p, c) in ab {
                for (q, d) in bb {
                    prod.push((p * nb + q, c * d));
                }
            }
            table.push(((i * nb + j, k * nb + l), prod));
        }
    }
    let (ua, ub) = (a.unit(), b.unit());
    let mut unit = Vec::with_capacity(na * nb);
    for x in ua.coords() {
        for y in ub.coords() {
            unit.push(x * y);
        }
    }
    let mut labels = Vec::with_capacity(na * nb);
    for la in a.labels() {
        for lb in b.labels() {
            labels.push(format!("{la}⊗{lb}"));
        }
    }
    Algebra::build(a.field(), na * nb, table, unit, labels)
}
