use std::sync::Arc;

use super::{Algebra, Element, Tensor2};
use crate::error::{Error, Result};
use crate::linalg::{invert, Matrix};

/// A linear map between algebras, `f(b_i) = sum_j F[j][i] c_j`, together with
/// the properties that were checked exhaustively on the basis.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    matrix: Matrix,
    multiplicative: bool,
    unital: bool,
    invertible: bool,
}

impl AlgebraMorphism {
    /// Records which of the morphism properties `matrix` has, without
    /// requiring any of them. Fails only on shape or field errors.
    pub fn inspect(source: Arc<Algebra>, target: Arc<Algebra>, matrix: Matrix) -> Result<Self> {
        check_shape(&source, &target, &matrix)?;
        let unital = matrix.mul_vec(source.unit().coords())? == target.unit().coords();
        let multiplicative = first_non_multiplicative(&source, &target, &matrix)?.is_none();
        let invertible = matrix.rows() == matrix.cols() && invert(&matrix)?.is_some();
        Ok(AlgebraMorphism {
            source,
            target,
            matrix,
            multiplicative,
            unital,
            invertible,
        })
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_multiplicative(&self) -> bool {
        self.multiplicative
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn is_invertible(&self) -> bool {
        self.invertible
    }

    /// Verified unital algebra isomorphism.
    pub fn is_isomorphism(&self) -> bool {
        self.multiplicative && self.unital && self.invertible
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.source.check_element(x)?;
        Ok(Element::new(self.matrix.mul_vec(x.coords())?))
    }

    /// `(f ⊗ f)(t)`, i.e. `F t F^T`.
    pub fn apply_tensor(&self, t: &Tensor2) -> Result<Tensor2> {
        self.source.check_tensor(t)?;
        let m = self.matrix.mul(t.matrix())?.mul(&self.matrix.transpose())?;
        Tensor2::from_matrix(m)
    }
}

fn check_shape(source: &Algebra, target: &Algebra, matrix: &Matrix) -> Result<()> {
    if source.field() != target.field() || matrix.field() != source.field() {
        return Err(Error::FieldMismatch {
            left: source.field(),
            right: if matrix.field() != source.field() {
                matrix.field()
            } else {
                target.field()
            },
        });
    }
    if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
        return Err(Error::DimensionMismatch {
            expected: format!("{}x{} matrix", target.dim(), source.dim()),
            found: format!("{}x{}", matrix.rows(), matrix.cols()),
        });
    }
    Ok(())
}

fn first_non_multiplicative(
    source: &Algebra,
    target: &Algebra,
    matrix: &Matrix,
) -> Result<Option<(usize, usize)>> {
    let n = source.dim();
    let images: Vec<Vec<_>> = (0..n).map(|i| matrix.column(i)).collect();
    for i in 0..n {
        for j in 0..n {
            let prod = source.mul_coords(source.basis(i).coords(), source.basis(j).coords());
            let lhs = matrix.mul_vec(&prod)?;
            let rhs = target.mul_coords(&images[i], &images[j]);
            if lhs != rhs {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Verifies that `matrix` is a unital algebra homomorphism `source -> target`
/// and records whether it is invertible.
pub fn check_morphism(
    source: &Arc<Algebra>,
    target: &Arc<Algebra>,
    matrix: Matrix,
) -> Result<AlgebraMorphism> {
    check_shape(source, target, &matrix)?;
    if matrix.mul_vec(source.unit().coords())? != target.unit().coords() {
        return Err(Error::NotUnital);
    }
    if let Some((i, j)) = first_non_multiplicative(source, target, &matrix)? {
        return Err(Error::NotMultiplicative { i, j });
    }
    AlgebraMorphism::inspect(Arc::clone(source), Arc::clone(target), matrix)
}
