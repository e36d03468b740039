//! Named example algebras.

use crate::forms::KForm;
use crate::hermitian::{beta_r, gamma_ij, HermitianStructure};
use crate::liealg::{LieAlgebra, Mode};
use crate::linalg::Matrix;
use crate::scalar::{int, Scalar};

use super::assoc::{aff, AssocAlgebra};
use super::semidirect::{semidirect_realification, ComplexMatrixRep};
use super::CatalogError;

fn from_des<T: Scalar>(dim: usize, des: &[(usize, KForm<T>)]) -> Result<HermitianStructure<T>, CatalogError> {
    let mut all = vec![KForm::zero(dim, 2); dim];
    for (k, d) in des {
        all[k - 1] = d.clone();
    }
    Ok(HermitianStructure::adapted(LieAlgebra::from_differentials(all, Mode::Strict)?)?)
}

pub fn g1<T: Scalar>() -> Result<HermitianStructure<T>, CatalogError> {
    from_des(8, &[(6, beta_r(4, 1)), (7, gamma_ij(4, 1, 3)), (8, gamma_ij(4, 1, 4))])
}

pub fn g2<T: Scalar>() -> Result<HermitianStructure<T>, CatalogError> {
    from_des(8, &[(7, gamma_ij(4, 1, 3)), (8, gamma_ij(4, 1, 4))])
}

pub fn g3<T: Scalar>() -> Result<HermitianStructure<T>, CatalogError> {
    from_des(8, &[(8, beta_r(4, 1))])
}

fn real_rep<T: Scalar>(rows: &[&[i64]]) -> Result<ComplexMatrixRep<T>, CatalogError> {
    ComplexMatrixRep::real(Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()))
}

pub fn s6_rep<T: Scalar>() -> Result<ComplexMatrixRep<T>, CatalogError> {
    real_rep(&[&[1, 0], &[0, -1]])
}

pub fn s6<T: Scalar>() -> Result<HermitianStructure<T>, CatalogError> {
    semidirect_realification(&s6_rep()?)
}

pub fn complex_heisenberg_rep<T: Scalar>() -> Result<ComplexMatrixRep<T>, CatalogError> {
    real_rep(&[&[0, 0], &[1, 0]])
}

pub fn complex_heisenberg_realified<T: Scalar>() -> Result<HermitianStructure<T>, CatalogError> {
    semidirect_realification(&complex_heisenberg_rep()?)
}

pub fn step3<T: Scalar>() -> Result<HermitianStructure<T>, CatalogError> {
    semidirect_realification(&real_rep(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]])?)
}

/// `M_λ = [[0,0,0,0],[1,0,0,0],[0,0,λ,0],[0,0,0,−λ]]` with `λ = a + ib`.
pub fn m_lambda_rep<T: Scalar>(a: T, b: T) -> Result<ComplexMatrixRep<T>, CatalogError> {
    if a.is_zero() && b.is_zero() {
        return Err(CatalogError::BadParam { name: "a, b".into(), reason: "lambda = a + ib must be nonzero".into() });
    }
    let mut re = Matrix::zeros(4, 4);
    let mut im = Matrix::zeros(4, 4);
    re[(1, 0)] = T::one();
    re[(2, 2)] = a.clone();
    re[(3, 3)] = -a;
    im[(2, 2)] = b.clone();
    im[(3, 3)] = -b;
    ComplexMatrixRep::new(4, vec![(re, im)])
}

pub fn m_lambda<T: Scalar>(a: T, b: T) -> Result<HermitianStructure<T>, CatalogError> {
    semidirect_realification(&m_lambda_rep(a, b)?)
}

/// `h_3 × R^3` with `de^6 = e^{12}`.
pub fn h3xr3<T: Scalar>() -> Result<HermitianStructure<T>, CatalogError> {
    from_des(6, &[(6, KForm::basis(6, &[1, 2]))])
}

pub fn abelian<T: Scalar>(dim: usize) -> Result<HermitianStructure<T>, CatalogError> {
    if dim == 0 || !dim.is_multiple_of(2) {
        return Err(CatalogError::BadParam { name: "dim".into(), reason: "must be a positive even integer".into() });
    }
    Ok(HermitianStructure::adapted(LieAlgebra::abelian(dim))?)
}

/// `e_1² = −e_3`, `e_2² = e_3`.
pub fn a1<T: Scalar>() -> AssocAlgebra<T> {
    AssocAlgebra::new(3, [((1, 1, 3), int(-1)), ((2, 2, 3), int(1))]).expect("valid products")
}

/// `A_1 × R`.
pub fn b1<T: Scalar>() -> AssocAlgebra<T> {
    AssocAlgebra::new(4, [((1, 1, 3), int(-1)), ((2, 2, 3), int(1))]).expect("valid products")
}

/// `e_1² = e_2² = λ e_4`, `e_3² = −2λ e_4`.
pub fn b2<T: Scalar>(lambda: T) -> AssocAlgebra<T> {
    let two = int::<T>(2);
    AssocAlgebra::new(4, [((1, 1, 4), lambda.clone()), ((2, 2, 4), lambda.clone()), ((3, 3, 4), -(two * lambda))])
        .expect("valid products")
}

/// `A_1` plus `e_1 e_2 = e_4`.
pub fn b3<T: Scalar>() -> AssocAlgebra<T> {
    AssocAlgebra::new(4, [((1, 1, 3), int(-1)), ((2, 2, 3), int(1)), ((1, 2, 4), int(1))]).expect("valid products")
}

pub(crate) fn aff_balanced<T: Scalar>(a: &AssocAlgebra<T>) -> Result<HermitianStructure<T>, CatalogError> {
    let out = aff(a)?;
    if !out.balanced {
        return Err(CatalogError::Inconsistent("expected a balanced aff structure".into()));
    }
    Ok(out.structure)
}
