//! Commutative associative algebras and the Lie algebras `aff(A)`.

use std::collections::BTreeMap;

use crate::hermitian::HermitianStructure;
use crate::liealg::{LieAlgebra, Mode};
use crate::linalg::{kernel, Subspace};
use crate::scalar::Scalar;

use super::CatalogError;

/// A commutative algebra given by `e_i e_j = Σ_k a_{ij}^k e_k`, stored with
/// symmetric completion.
#[derive(Clone, PartialEq)]
pub struct AssocAlgebra<T> {
    dim: usize,
    /// `a[(i * dim + j) * dim + k]`, 0-based.
    product: Vec<T>,
}

/// Predicates of an [`AssocAlgebra`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssocChecks {
    pub commutative: bool,
    pub associative: bool,
    pub nilpotent: bool,
}

impl<T: Scalar> AssocAlgebra<T> {
    /// `((i, j, k), a_{ij}^k)` entries, 1-based. `(i, j)` and `(j, i)` describe the same product.
    pub fn new(
        dim: usize,
        entries: impl IntoIterator<Item = ((usize, usize, usize), T)>,
    ) -> Result<Self, CatalogError> {
        if dim == 0 {
            return Err(CatalogError::OutOfRange("associative algebra must have positive dimension".into()));
        }
        let mut seen: BTreeMap<(usize, usize, usize), T> = BTreeMap::new();
        for ((i, j, k), c) in entries {
            if [i, j, k].iter().any(|&x| x == 0 || x > dim) {
                return Err(CatalogError::OutOfRange(format!("product index ({i},{j},{k}) out of range")));
            }
            let key = (i.min(j), i.max(j), k);
            if let Some(prev) = seen.insert(key, c.clone()) {
                if prev != c {
                    return Err(CatalogError::Conflict(format!("product ({i},{j},{k}) given twice")));
                }
            }
        }
        let mut product = vec![T::zero(); dim * dim * dim];
        for ((i, j, k), c) in seen {
            product[((i - 1) * dim + (j - 1)) * dim + (k - 1)] = c.clone();
            product[((j - 1) * dim + (i - 1)) * dim + (k - 1)] = c;
        }
        Ok(AssocAlgebra { dim, product })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `a_{ij}^k`, 1-based.
    pub fn a(&self, i: usize, j: usize, k: usize) -> &T {
        &self.product[((i - 1) * self.dim + (j - 1)) * self.dim + (k - 1)]
    }

    /// Nonzero `a_{ij}^k` with `i ≤ j`.
    pub fn entries(&self) -> BTreeMap<(usize, usize, usize), T> {
        let mut out = BTreeMap::new();
        for i in 1..=self.dim {
            for j in i..=self.dim {
                for k in 1..=self.dim {
                    let c = self.a(i, j, k);
                    if !c.is_zero() {
                        out.insert((i, j, k), c.clone());
                    }
                }
            }
        }
        out
    }

    pub fn mul(&self, x: &[T], y: &[T]) -> Vec<T> {
        let d = self.dim;
        let mut out = vec![T::zero(); d];
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if y[j].is_zero() {
                    continue;
                }
                let xy = x[i].clone() * y[j].clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.product[(i * d + j) * d + k];
                    if !c.is_zero() {
                        *o = o.clone() + xy.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    fn basis_vec(&self, i: usize) -> Vec<T> {
        crate::linalg::unit(self.dim, i - 1)
    }

    pub fn is_associative(&self) -> bool {
        for i in 1..=self.dim {
            for j in 1..=self.dim {
                let ij = self.mul(&self.basis_vec(i), &self.basis_vec(j));
                for k in 1..=self.dim {
                    let jk = self.mul(&self.basis_vec(j), &self.basis_vec(k));
                    if self.mul(&ij, &self.basis_vec(k)) != self.mul(&self.basis_vec(i), &jk) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `A^{k+1} = A · A^k` reaches zero.
    pub fn is_nilpotent(&self) -> bool {
        let mut power = Subspace::full(self.dim);
        loop {
            let mut next = Subspace::zero(self.dim);
            for i in 1..=self.dim {
                for v in power.basis() {
                    next.insert(&self.mul(&self.basis_vec(i), v));
                }
            }
            if next.is_zero() {
                return true;
            }
            if next.dim() == power.dim() {
                return false;
            }
            power = next;
        }
    }

    pub fn checks(&self) -> AssocChecks {
        AssocChecks { commutative: true, associative: self.is_associative(), nilpotent: self.is_nilpotent() }
    }

    /// `Ann(A) = {x : x y = 0 for all y}`.
    pub fn annihilator(&self) -> Subspace<T> {
        let d = self.dim;
        let rows: Vec<Vec<T>> = (1..=d)
            .flat_map(|j| (1..=d).map(move |k| (j, k)))
            .map(|(j, k)| (1..=d).map(|i| self.a(i, j, k).clone()).collect())
            .collect();
        Subspace::span(d, kernel(&rows, d))
    }

    /// `Σ_i e_i²`.
    pub fn sum_of_squares(&self) -> Vec<T> {
        (1..=self.dim).map(|k| (1..=self.dim).fold(T::zero(), |acc, i| acc + self.a(i, i, k).clone())).collect()
    }
}

impl<T: Scalar> std::fmt::Debug for AssocAlgebra<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AssocAlgebra(dim {}", self.dim)?;
        for ((i, j, k), c) in self.entries() {
            write!(f, ", e{i}e{j} = {c} e{k}")?;
        }
        write!(f, ")")
    }
}

/// `aff(A)` with its standard abelian structure, and whether that structure is balanced.
#[derive(Clone, PartialEq)]
pub struct Aff<T> {
    pub structure: HermitianStructure<T>,
    /// `Σ_i e_i² = 0`.
    pub balanced: bool,
}

impl<T: Scalar> std::fmt::Debug for Aff<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Aff").field("structure", &self.structure).field("balanced", &self.balanced).finish()
    }
}

/// Interleaved basis `u_i = e_{2i−1}`, `v_i = e_{2i}`, with `[u_i, v_j] = Σ_k a_{ij}^k v_k`.
pub fn aff<T: Scalar>(a: &AssocAlgebra<T>) -> Result<Aff<T>, CatalogError> {
    let checks = a.checks();
    if !checks.associative {
        return Err(CatalogError::NotAssociative);
    }
    if !checks.nilpotent {
        return Err(CatalogError::NotNilpotent);
    }
    let d = a.dim();
    let mut entries: BTreeMap<(usize, usize, usize), T> = BTreeMap::new();
    for i in 1..=d {
        for j in 1..=d {
            for k in 1..=d {
                let c = a.a(i, j, k);
                if c.is_zero() {
                    continue;
                }
                // [u_i, v_j] = c v_k means c_{u_i v_j}^{v_k} = −c.
                let (u, v) = (2 * i - 1, 2 * j);
                let entry = if u < v { ((u, v, 2 * k), -c.clone()) } else { ((v, u, 2 * k), c.clone()) };
                entries.insert(entry.0, entry.1);
            }
        }
    }
    let alg = LieAlgebra::from_structure(2 * d, entries, Mode::Strict)?;
    let balanced = a.sum_of_squares().iter().all(T::is_zero);
    Ok(Aff { structure: HermitianStructure::adapted(alg)?, balanced })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::named::{a1, b2, b3};
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn a1_checks() {
        let a = a1::<Q>();
        assert_eq!(a.checks(), AssocChecks { commutative: true, associative: true, nilpotent: true });
        let not_nil = AssocAlgebra::new(1, [((1, 1, 1), q(1))]).unwrap();
        assert!(!not_nil.checks().nilpotent);
        let b = b2::<Q>(q(1));
        assert!(b.checks().associative && b.checks().nilpotent);
    }

    #[test]
    fn aff_a1_brackets() {
        let aff = aff(&a1::<Q>()).unwrap();
        let alg = aff.structure.algebra();
        assert_eq!(alg.bracket_basis(1, 2), crate::linalg::unit::<Q>(6, 5).into_iter().map(|x| -x).collect::<Vec<_>>());
        assert_eq!(alg.bracket_basis(3, 4), crate::linalg::unit::<Q>(6, 5));
        assert!(aff.balanced);
    }

    #[test]
    fn aff_b3_brackets() {
        let alg = aff(&b3::<Q>()).unwrap().structure.algebra().clone();
        let v4 = crate::linalg::unit::<Q>(8, 7);
        assert_eq!(alg.bracket_basis(1, 4), v4);
        assert_eq!(alg.bracket_basis(3, 2), v4);
    }

    #[test]
    fn unbalanced_flag() {
        let a = AssocAlgebra::new(3, [((1, 1, 3), q(1))]).unwrap();
        assert!(!aff(&a).unwrap().balanced);
    }

    #[test]
    fn center_is_annihilator_squared() {
        for a in [a1::<Q>(), b2(q(2)), b3()] {
            let ann = a.annihilator();
            let alg = aff(&a).unwrap().structure.algebra().clone();
            let d = a.dim();
            let lifted = ann.basis().iter().flat_map(|x| {
                let u: Vec<Q> = (0..2 * d).map(|p| if p % 2 == 0 { x[p / 2].clone() } else { q(0) }).collect();
                let v: Vec<Q> = (0..2 * d).map(|p| if p % 2 == 1 { x[p / 2].clone() } else { q(0) }).collect();
                [u, v]
            });
            assert_eq!(alg.center(), Subspace::span(2 * d, lifted));
        }
    }

    #[test]
    fn conflicting_products() {
        assert!(AssocAlgebra::new(2, [((1, 2, 2), q(1)), ((2, 1, 2), q(2))]).is_err());
        assert!(AssocAlgebra::new(2, [((1, 2, 2), q(1)), ((2, 1, 2), q(1))]).is_ok());
    }
}
