//! Exact scalars, truncated jets, sparse vectors, structure-constant tables,
//! dense matrices and tensors.

mod bilinear;
mod jet;
mod matrix;
mod rational;
mod scalar;
mod space;
mod tensor;
mod vector;

pub use bilinear::BilinearOp;
pub use jet::Jet;
pub use matrix::{LinearMap, Matrix};
pub use rational::Rational;
pub use scalar::Scalar;
pub use space::Space;
pub use tensor::{sharp, unsharp, Tensor2, Tensor3, TensorElement};
pub use vector::SparseVec;

/// Product of two jets of equal order.
pub fn jet_mul(a: &Jet, b: &Jet) -> crate::Result<Jet> {
    a.mul(b)
}

/// Division by `h` of a jet with zero constant term.
pub fn jet_div_h(a: &Jet) -> crate::Result<Jet> {
    a.div_h()
}
