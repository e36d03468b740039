//! Heisenberg-type algebras `h_{2n+1} × R^{2k+1}` with abelian structures.

use crate::forms::KForm;
use crate::hermitian::HermitianStructure;
use crate::liealg::{LieAlgebra, Mode};
use crate::scalar::{int, Scalar};

use super::CatalogError;

/// Coefficients `μ_i` with `[f_{2i−1}, f_{2i}] = μ_i z_0`.
pub fn heisenberg_weights(n: usize, r: usize) -> Vec<i64> {
    (1..=n)
        .map(|i| match i {
            1 => n as i64 + 1 - 2 * r as i64,
            i if i <= r => 1,
            _ => -1,
        })
        .collect()
}

/// Balanced abelian structure in the class `J_r`.
///
/// Basis `(f_1, …, f_{2n}, z_0, z_1, …, z_{2k+1})`, dimension `2n + 2k + 2`,
/// with `[f_1, f_2] = (n+1−2r) z_0`, `[f_{2i−1}, f_{2i}] = z_0` for `2 ≤ i ≤ r`
/// and `−z_0` for `i > r`.
pub fn heisenberg<T: Scalar>(n: usize, k: usize, r: usize) -> Result<HermitianStructure<T>, CatalogError> {
    if n < 2 || r == 0 {
        return Err(CatalogError::NoBalancedMetric);
    }
    if r > n / 2 {
        return Err(CatalogError::OutOfRange(format!("r = {r} must satisfy 1 <= r <= {}", n / 2)));
    }
    let dim = 2 * n + 2 * k + 2;
    let z0 = 2 * n + 1;
    let entries =
        heisenberg_weights(n, r).into_iter().enumerate().map(|(i, mu)| ((2 * i + 1, 2 * i + 2, z0), int::<T>(-mu)));
    let alg = LieAlgebra::from_structure(dim, entries, Mode::Strict)?;
    Ok(HermitianStructure::adapted(alg)?)
}

/// `h_{2n+1} × R^{2k+1}` with `[e_{2i−1}, e_{2i}] = z_0` for every `i`, `z_0` last.
/// The standard structure on it is never balanced.
pub fn heisenberg_standard<T: Scalar>(n: usize, k: usize) -> Result<HermitianStructure<T>, CatalogError> {
    if n == 0 {
        return Err(CatalogError::OutOfRange("n must be at least 1".into()));
    }
    let dim = 2 * n + 2 * k + 2;
    let mut des = vec![KForm::zero(dim, 2); dim];
    des[dim - 1] = KForm::from_terms(dim, 2, (1..=n).map(|i| (vec![2 * i - 1, 2 * i], int::<T>(-1))));
    let alg = LieAlgebra::from_differentials(des, Mode::Strict)?;
    Ok(HermitianStructure::adapted(alg)?)
}
