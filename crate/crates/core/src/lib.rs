//! Exact computations with nearly Frobenius structures on finite-dimensional
//! associative algebras over `Q` and `F_p`.
//!
//! An algebra is given by structure constants in a fixed basis. A nearly
//! Frobenius coproduct is stored as its value `Δ(1) ∈ A ⊗ A`, a tensor indexed
//! by basis pairs `(i, j)`.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod format;
pub mod frobenius;
pub mod linalg;
pub mod scalar;
pub mod separability;
pub mod zoo;

pub use algebra::{
    check_morphism, direct_product, ideal_closure, quotient, tensor_product, Algebra, AlgebraMorphism,
    DirectProduct, Element, Quotient, Subspace, Tensor2,
};
pub use error::{Error, Result};
pub use frobenius::{
    apply_coproduct, frobdim, frobenius_space, product_coproduct, tensor_coproduct, transport_coproduct,
    verify_coproduct, Coproduct, CoproductViolation, FrobeniusSpace,
};
pub use scalar::{Field, Scalar};
pub use separability::{
    is_normalized, is_separable, normalized_coproduct, semisimple_char0, trace_form, SeparabilityVerdict,
};
