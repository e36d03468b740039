//! Realified semidirect products `C^m ⋉_π C^n` with `π(C^m) ⊆ sl(n, C)`.
//!
//! Identification: `A_p = e_{2p−1}`, `B_p = e_{2p}` span `R^{2m}` with `A_p ↔ ε_p`,
//! `B_p ↔ iε_p`; on `R^{2n}`, `e_{2m+2q−1} ↔ w_q` and `e_{2m+2q} ↔ −i w_q`.
//! Brackets are `[A_p, X] = M̃_p X` and `[B_p, X] = I M̃_p X`.

use std::collections::BTreeMap;

use crate::hermitian::{ComplexStructure, HermitianStructure};
use crate::liealg::{LieAlgebra, Mode};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

use super::CatalogError;

/// `m` commuting traceless complex `n × n` matrices, as real and imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrixRep<T: std::fmt::Display> {
    pub m: usize,
    pub n: usize,
    pub matrices: Vec<(Matrix<T>, Matrix<T>)>,
}

fn complex_mul<T: Scalar>(a: &(Matrix<T>, Matrix<T>), b: &(Matrix<T>, Matrix<T>)) -> (Matrix<T>, Matrix<T>) {
    let re = &(&a.0 * &b.0) - &(&a.1 * &b.1);
    let im = &(&a.0 * &b.1) + &(&a.1 * &b.0);
    (re, im)
}

impl<T: Scalar> ComplexMatrixRep<T> {
    pub fn new(n: usize, matrices: Vec<(Matrix<T>, Matrix<T>)>) -> Result<Self, CatalogError> {
        if n == 0 || matrices.is_empty() {
            return Err(CatalogError::BadRepresentation("need n >= 1 and at least one matrix".into()));
        }
        for (p, (re, im)) in matrices.iter().enumerate() {
            for part in [re, im] {
                if part.nrows() != n || part.ncols() != n {
                    return Err(CatalogError::BadRepresentation(format!("matrix {} is not {n}x{n}", p + 1)));
                }
            }
            if !re.trace().is_zero() || !im.trace().is_zero() {
                return Err(CatalogError::BadRepresentation(format!("matrix {} is not traceless", p + 1)));
            }
        }
        for a in 0..matrices.len() {
            for b in a + 1..matrices.len() {
                if complex_mul(&matrices[a], &matrices[b]) != complex_mul(&matrices[b], &matrices[a]) {
                    return Err(CatalogError::BadRepresentation(format!(
                        "matrices {} and {} do not commute",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        Ok(ComplexMatrixRep { m: matrices.len(), n, matrices })
    }

    /// A single real matrix (`m = 1`, zero imaginary part).
    pub fn real(matrix: Matrix<T>) -> Result<Self, CatalogError> {
        let n = matrix.nrows();
        Self::new(n, vec![(matrix, Matrix::zeros(n, n))])
    }

    /// The `2n × 2n` real form `M̃` of matrix `p` (0-based).
    pub fn realified(&self, p: usize) -> Matrix<T> {
        let (re, im) = &self.matrices[p];
        let mut out = Matrix::zeros(2 * self.n, 2 * self.n);
        for qq in 0..self.n {
            for pp in 0..self.n {
                let (x, y) = (&re[(qq, pp)], &im[(qq, pp)]);
                // column of w_p: x e_{q,re} − y e_{q,im}; column of −i w_p: y e_{q,re} + x e_{q,im}
                out[(2 * qq, 2 * pp)] = x.clone();
                out[(2 * qq + 1, 2 * pp)] = -y.clone();
                out[(2 * qq, 2 * pp + 1)] = y.clone();
                out[(2 * qq + 1, 2 * pp + 1)] = x.clone();
            }
        }
        out
    }
}

/// Multiplication by `i` on `R^{2n}`: `e_odd ↦ −e_even`, `e_even ↦ e_odd`.
fn i_block<T: Scalar>(n: usize) -> Matrix<T> {
    ComplexStructure::<T>::standard(2 * n).expect("even").matrix().clone()
}

pub fn semidirect_algebra<T: Scalar>(rep: &ComplexMatrixRep<T>) -> Result<LieAlgebra<T>, CatalogError> {
    let (m, n) = (rep.m, rep.n);
    let dim = 2 * m + 2 * n;
    let i = i_block::<T>(n);
    let mut entries: BTreeMap<(usize, usize, usize), T> = BTreeMap::new();
    for p in 0..m {
        let mt = rep.realified(p);
        let imt = &i * &mt;
        for (row, action) in [(2 * p + 1, &mt), (2 * p + 2, &imt)] {
            for x in 0..2 * n {
                for k in 0..2 * n {
                    let c = &action[(k, x)];
                    if !c.is_zero() {
                        entries.insert((row, 2 * m + x + 1, 2 * m + k + 1), -c.clone());
                    }
                }
            }
        }
    }
    Ok(LieAlgebra::from_structure(dim, entries, Mode::Strict)?)
}

/// The realified algebra with `J|_{R^{2m}} = −I`, `J|_{R^{2n}} = I`, i.e. the standard adapted structure.
pub fn semidirect_realification<T: Scalar>(rep: &ComplexMatrixRep<T>) -> Result<HermitianStructure<T>, CatalogError> {
    Ok(HermitianStructure::adapted(semidirect_algebra(rep)?)?)
}

/// The bi-invariant complex structure induced by multiplication by `i`.
pub fn multiplication_by_i<T: Scalar>(rep: &ComplexMatrixRep<T>) -> ComplexStructure<T> {
    let dim = 2 * rep.m + 2 * rep.n;
    let mut mat = ComplexStructure::<T>::standard(dim).expect("even").matrix().clone();
    for a in 0..2 * rep.m {
        for b in 0..2 * rep.m {
            mat[(a, b)] = -mat[(a, b)].clone();
        }
    }
    ComplexStructure::new(mat).expect("squares to -Id")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{is_abelian, is_complex_structure};
    use crate::{Form, Q};

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn e(idx: &[usize]) -> Form {
        Form::basis(6, idx)
    }

    #[test]
    fn s6_equations() {
        let rep = ComplexMatrixRep::real(Matrix::diagonal(&[q(1), q(-1)])).unwrap();
        let alg = semidirect_algebra(&rep).unwrap();
        assert!(alg.de(1).is_zero() && alg.de(2).is_zero());
        assert_eq!(alg.de(3), &(&-e(&[1, 3]) - &e(&[2, 4])));
        assert_eq!(alg.de(4), &(&-e(&[1, 4]) + &e(&[2, 3])));
        assert_eq!(alg.de(5), &(&e(&[1, 5]) + &e(&[2, 6])));
        assert_eq!(alg.de(6), &(&e(&[1, 6]) - &e(&[2, 5])));
    }

    #[test]
    fn bi_invariant_structure_is_not_abelian() {
        let rep = ComplexMatrixRep::real(Matrix::from_rows(vec![vec![q(0), q(0)], vec![q(1), q(0)]])).unwrap();
        let alg = semidirect_algebra(&rep).unwrap();
        let i = multiplication_by_i(&rep);
        assert!(is_complex_structure(&alg, &i).unwrap());
        assert!(!is_abelian(&alg, &i).unwrap());
        let j = ComplexStructure::standard(6).unwrap();
        assert!(is_abelian(&alg, &j).unwrap());
    }

    #[test]
    fn representation_validation() {
        assert!(ComplexMatrixRep::real(Matrix::diagonal(&[q(1), q(1)])).is_err());
        let a = (Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(0), q(0)]]), Matrix::zeros(2, 2));
        let b = (Matrix::from_rows(vec![vec![q(0), q(0)], vec![q(1), q(0)]]), Matrix::zeros(2, 2));
        assert!(ComplexMatrixRep::new(2, vec![a, b]).is_err());
    }
}
