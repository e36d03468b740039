//! Exact computations for abelian complex structures, balanced Hermitian metrics
//! and the holonomy of the Bismut connection on Lie algebras.
//!
//! All computations are generic over an exact [`Scalar`] field; the aliases
//! below fix the field to arbitrary-precision rationals.

#![allow(clippy::needless_range_loop)]

pub mod bismut;
pub mod catalog;
pub mod forms;
pub mod hermitian;
pub mod liealg;
pub mod linalg;
pub mod scalar;

use num_rational::BigRational;

pub use forms::{FormError, KForm};
pub use hermitian::{ComplexStructure, GammaSpace, HermitianError, HermitianStructure};
pub use liealg::{Fingerprint, LieAlgebra, LieError, Mode};
pub use linalg::{Matrix, Subspace};
pub use scalar::Scalar;

pub type Q = BigRational;
pub type Form = KForm<Q>;
pub type Algebra = LieAlgebra<Q>;
pub type Hermitian = HermitianStructure<Q>;
pub type Complex = ComplexStructure<Q>;
pub type QMatrix = Matrix<Q>;
