//! Lie algebras given by structure constants.
//!
//! The stored data are the coefficients of the differentials,
//! `de^k = Σ_{i<j} c_{ij}^k e^{ij}`, and the bracket is recovered with the
//! opposite sign, `[e_i, e_j] = −Σ_k c_{ij}^k e_k`, because
//! `de^k(e_i, e_j) = −e^k([e_i, e_j])`. All indices in the public API are 1-based.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::forms::{combinations, KForm};
use crate::linalg::{kernel, rank, sparse_rank, unit, Matrix, Subspace};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("dimension must be positive")]
    EmptyAlgebra,
    #[error("structure constant ({i},{j},{k}) out of range for dimension {dim}")]
    IndexOutOfRange { i: usize, j: usize, k: usize, dim: usize },
    #[error("structure constant ({i},{j},{k}) must have i < j")]
    NotIncreasing { i: usize, j: usize, k: usize },
    #[error("duplicate structure constant ({i},{j},{k})")]
    Duplicate { i: usize, j: usize, k: usize },
    #[error("de^{k} must be a 2-form on the algebra")]
    BadDifferential { k: usize },
    #[error("Jacobi identity fails: {}", format_defects(.defects))]
    Jacobi { defects: Vec<(usize, String)> },
    #[error("vector of length {len} does not match dimension {dim}")]
    VectorLength { len: usize, dim: usize },
    #[error("change of basis matrix is singular or has the wrong shape")]
    BadChangeOfBasis,
}

fn format_defects(defects: &[(usize, String)]) -> String {
    defects.iter().map(|(k, f)| format!("d(de^{k}) = {f}")).collect::<Vec<_>>().join(", ")
}

/// How construction treats a failing Jacobi identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Reject the structure constants.
    #[default]
    Strict,
    /// Build anyway; defects are available through [`LieAlgebra::jacobi_defect`].
    Lax,
}

#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra<T> {
    dim: usize,
    /// `c[(i * dim + j) * dim + k]`, 0-based, antisymmetric in `(i, j)`.
    consts: Vec<T>,
    differentials: Vec<KForm<T>>,
}

/// Lower central and derived series data.
#[derive(Clone, PartialEq, Eq)]
pub struct Series<T> {
    /// `s` with `g^{s+1} = 0` for the lower central series `g^1 = g`,
    /// `g^{i+1} = [g, g^i]`; `None` if the series stabilises above zero.
    pub nilpotency_step: Option<usize>,
    /// `s` with `g^{(s)} = 0` for the derived series; `None` if it stabilises above zero.
    pub solvability_step: Option<usize>,
    pub derived_algebra: Subspace<T>,
    pub lower_central_dims: Vec<usize>,
    pub derived_dims: Vec<usize>,
}

/// Isomorphism invariants used in place of an isomorphism test.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub dim: usize,
    pub betti_1: usize,
    pub center_dim: usize,
    pub derived_dim: usize,
    pub nilpotency_step: Option<usize>,
    /// `rank(d: Λ^k → Λ^{k+1})` for `k = 0..dim`.
    pub d_ranks: Vec<usize>,
}

impl<T: Scalar> LieAlgebra<T> {
    /// Builds an algebra from `((i, j, k), c_{ij}^k)` entries with `i < j`.
    pub fn from_structure(
        dim: usize,
        entries: impl IntoIterator<Item = ((usize, usize, usize), T)>,
        mode: Mode,
    ) -> Result<Self, LieError> {
        if dim == 0 {
            return Err(LieError::EmptyAlgebra);
        }
        let mut seen = BTreeMap::new();
        for ((i, j, k), c) in entries {
            if i == 0 || j == 0 || k == 0 || i > dim || j > dim || k > dim {
                return Err(LieError::IndexOutOfRange { i, j, k, dim });
            }
            if i >= j {
                return Err(LieError::NotIncreasing { i, j, k });
            }
            if seen.insert((i, j, k), c).is_some() {
                return Err(LieError::Duplicate { i, j, k });
            }
        }
        Self::build(dim, seen, mode)
    }

    /// Builds an algebra from its structure equations `de^1, …, de^m`.
    pub fn from_differentials(differentials: Vec<KForm<T>>, mode: Mode) -> Result<Self, LieError> {
        let dim = differentials.len();
        if dim == 0 {
            return Err(LieError::EmptyAlgebra);
        }
        let mut entries = BTreeMap::new();
        for (k, de) in differentials.iter().enumerate() {
            if de.degree() != 2 || de.ambient_dim() != dim {
                return Err(LieError::BadDifferential { k: k + 1 });
            }
            for (idx, c) in de.terms() {
                entries.insert((idx[0], idx[1], k + 1), c.clone());
            }
        }
        Self::build(dim, entries, mode)
    }

    pub fn abelian(dim: usize) -> Self {
        Self::build(dim, BTreeMap::new(), Mode::Strict).expect("abelian algebra is a Lie algebra")
    }

    fn build(dim: usize, entries: BTreeMap<(usize, usize, usize), T>, mode: Mode) -> Result<Self, LieError> {
        let mut consts = vec![T::zero(); dim * dim * dim];
        let mut terms: Vec<Vec<(Vec<usize>, T)>> = vec![Vec::new(); dim];
        for ((i, j, k), c) in entries {
            if c.is_zero() {
                continue;
            }
            consts[((i - 1) * dim + (j - 1)) * dim + (k - 1)] = c.clone();
            consts[((j - 1) * dim + (i - 1)) * dim + (k - 1)] = -c.clone();
            terms[k - 1].push((vec![i, j], c));
        }
        let differentials = terms.into_iter().map(|t| KForm::from_terms(dim, 2, t)).collect();
        let alg = LieAlgebra { dim, consts, differentials };
        if mode == Mode::Strict {
            let defects = alg.jacobi_defect();
            if !defects.is_empty() {
                return Err(LieError::Jacobi {
                    defects: defects.into_iter().map(|(k, f)| (k, f.to_string())).collect(),
                });
            }
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c_{ij}^k` for any `i, j` (antisymmetric completion), 1-based.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &T {
        &self.consts[((i - 1) * self.dim + (j - 1)) * self.dim + (k - 1)]
    }

    /// Nonzero constants `c_{ij}^k` with `i < j`.
    pub fn structure(&self) -> BTreeMap<(usize, usize, usize), T> {
        let mut out = BTreeMap::new();
        for (k, de) in self.differentials.iter().enumerate() {
            for (idx, c) in de.terms() {
                out.insert((idx[0], idx[1], k + 1), c.clone());
            }
        }
        out
    }

    /// The structure equation `de^k`.
    pub fn de(&self, k: usize) -> &KForm<T> {
        &self.differentials[k - 1]
    }

    pub fn differentials(&self) -> &[KForm<T>] {
        &self.differentials
    }

    /// `[e_i, e_j]` in coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<T> {
        (1..=self.dim).map(|k| -self.c(i, j, k).clone()).collect()
    }

    fn check_len(&self, v: &[T]) -> Result<(), LieError> {
        if v.len() != self.dim {
            return Err(LieError::VectorLength { len: v.len(), dim: self.dim });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[T], y: &[T]) -> Result<Vec<T>, LieError> {
        self.check_len(x)?;
        self.check_len(y)?;
        let m = self.dim;
        let mut out = vec![T::zero(); m];
        for i in 0..m {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..m {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let xy = x[i].clone() * y[j].clone();
                let base = (i * m + j) * m;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.consts[base + k];
                    if !c.is_zero() {
                        *o = o.clone() - xy.clone() * c.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad_x` in the column convention: column `j` is `[x, e_j]`.
    pub fn ad(&self, x: &[T]) -> Result<Matrix<T>, LieError> {
        self.check_len(x)?;
        let cols: Vec<Vec<T>> = (0..self.dim).map(|j| self.bracket(x, &unit(self.dim, j))).collect::<Result<_, _>>()?;
        Ok(Matrix::from_columns(&cols))
    }

    /// Every `k` with `d(de^k) ≠ 0`, together with the defect 3-form.
    /// Empty exactly when the Jacobi identity holds.
    pub fn jacobi_defect(&self) -> Vec<(usize, KForm<T>)> {
        (1..=self.dim)
            .filter_map(|k| {
                let dd = self.de(k).differential(self).expect("same dimension");
                (!dd.is_zero()).then_some((k, dd))
            })
            .collect()
    }

    pub fn is_lie_algebra(&self) -> bool {
        self.jacobi_defect().is_empty()
    }

    /// `tr ad_{e_i} = 0` for every basis vector.
    pub fn is_unimodular(&self) -> bool {
        (1..=self.dim).all(|i| self.trace_ad_basis(i).is_zero())
    }

    /// `tr ad_{e_i} = −Σ_j c_{ij}^j`.
    pub fn trace_ad_basis(&self, i: usize) -> T {
        (1..=self.dim).fold(T::zero(), |acc, j| acc - self.c(i, j, j).clone())
    }

    /// `tr ad_x`.
    pub fn trace_ad(&self, x: &[T]) -> T {
        x.iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .fold(T::zero(), |acc, (i, v)| acc + v.clone() * self.trace_ad_basis(i + 1))
    }

    /// The center, as the kernel of `x ↦ ad_x`.
    pub fn center(&self) -> Subspace<T> {
        let m = self.dim;
        // Row (j, k): Σ_i x_i [e_i, e_j]_k = −Σ_i x_i c_{ij}^k.
        let rows: Vec<Vec<T>> = (1..=m)
            .flat_map(|j| (1..=m).map(move |k| (j, k)))
            .map(|(j, k)| (1..=m).map(|i| -self.c(i, j, k).clone()).collect::<Vec<T>>())
            .filter(|r| r.iter().any(|v| !v.is_zero()))
            .collect();
        Subspace::span(m, kernel(&rows, m))
    }

    /// `span{[x, y] : x ∈ a, y ∈ b}`.
    pub fn bracket_span(&self, a: &Subspace<T>, b: &Subspace<T>) -> Subspace<T> {
        let mut out = Subspace::zero(self.dim);
        for x in a.basis() {
            for y in b.basis() {
                let v = self.bracket(x, y).expect("subspaces live in the algebra");
                out.insert(&v);
            }
        }
        out
    }

    pub fn derived_algebra(&self) -> Subspace<T> {
        let mut out = Subspace::zero(self.dim);
        for i in 1..=self.dim {
            for j in i + 1..=self.dim {
                out.insert(&self.bracket_basis(i, j));
            }
        }
        out
    }

    pub fn series(&self) -> Series<T> {
        let full = Subspace::full(self.dim);
        let derived = self.derived_algebra();

        let mut lower_central_dims = vec![self.dim];
        let mut current = derived.clone();
        let nilpotency_step = loop {
            lower_central_dims.push(current.dim());
            if current.is_zero() {
                break Some(lower_central_dims.len() - 1);
            }
            let next = self.bracket_span(&full, &current);
            if next.dim() == current.dim() {
                break None;
            }
            current = next;
        };

        let mut derived_dims = vec![self.dim];
        let mut current = derived.clone();
        let solvability_step = loop {
            derived_dims.push(current.dim());
            if current.is_zero() {
                break Some(derived_dims.len() - 1);
            }
            let next = self.bracket_span(&current, &current);
            if next.dim() == current.dim() {
                break None;
            }
            current = next;
        };

        Series { nilpotency_step, solvability_step, derived_algebra: derived, lower_central_dims, derived_dims }
    }

    /// Rank of `d` restricted to `k`-forms.
    pub fn d_rank(&self, k: usize) -> usize {
        if k == 1 {
            let rows: Vec<Vec<T>> = self.differentials.iter().map(KForm::coordinates).collect();
            return rank(&rows);
        }
        if k == 0 || k >= self.dim {
            return 0;
        }
        let targets: HashMap<Vec<usize>, usize> =
            combinations(self.dim, k + 1).into_iter().enumerate().map(|(n, c)| (c, n)).collect();
        let rows = combinations(self.dim, k).into_iter().map(|idx| {
            let d = KForm::basis(self.dim, &idx).differential(self).expect("same dimension");
            d.terms().map(|(t, c)| (targets[t], c.clone())).collect::<BTreeMap<usize, T>>()
        });
        sparse_rank(rows)
    }

    /// First Betti number, `dim − rank(d on 1-forms)`.
    pub fn betti_1(&self) -> usize {
        self.dim - self.d_rank(1)
    }

    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint {
            dim: self.dim,
            betti_1: self.betti_1(),
            center_dim: self.center().dim(),
            derived_dim: self.derived_algebra().dim(),
            nilpotency_step: self.series().nilpotency_step,
            d_ranks: (0..self.dim).map(|k| self.d_rank(k)).collect(),
        }
    }

    /// Re-expresses the algebra in the basis `f_a = Σ_i P_{ia} e_i` (columns of `P`).
    pub fn change_basis(&self, p: &Matrix<T>) -> Result<Self, LieError> {
        if p.nrows() != self.dim || p.ncols() != self.dim {
            return Err(LieError::BadChangeOfBasis);
        }
        let inv = p.inverse().ok_or(LieError::BadChangeOfBasis)?;
        let cols: Vec<Vec<T>> = (0..self.dim).map(|a| p.column(a)).collect();
        let mut entries = BTreeMap::new();
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                let v = self.bracket(&cols[a], &cols[b])?;
                for (k, coeff) in inv.mul_vec(&v).into_iter().enumerate() {
                    if !coeff.is_zero() {
                        entries.insert((a + 1, b + 1, k + 1), -coeff);
                    }
                }
            }
        }
        Self::build(self.dim, entries, Mode::Lax)
    }
}

impl<T: Scalar> std::fmt::Debug for Series<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Series")
            .field("nilpotency_step", &self.nilpotency_step)
            .field("solvability_step", &self.solvability_step)
            .field("derived_algebra", &self.derived_algebra)
            .field("lower_central_dims", &self.lower_central_dims)
            .field("derived_dims", &self.derived_dims)
            .finish()
    }
}

impl<T: Scalar> std::fmt::Debug for LieAlgebra<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra(dim {}; ", self.dim)?;
        let eqs: Vec<String> = self
            .differentials
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(k, d)| format!("de^{} = {}", k + 1, d))
            .collect();
        if eqs.is_empty() {
            write!(f, "abelian)")
        } else {
            write!(f, "{})", eqs.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Algebra, Form, Q};

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn e(n: usize, idx: &[usize]) -> Form {
        Form::basis(n, idx)
    }

    fn h3() -> Algebra {
        Algebra::from_differentials(vec![Form::zero(3, 2), Form::zero(3, 2), e(3, &[1, 2])], Mode::Strict).unwrap()
    }

    #[test]
    fn heisenberg_three() {
        let h = h3();
        assert!(h.jacobi_defect().is_empty());
        assert!(h.is_unimodular());
        assert_eq!(h.betti_1(), 2);
        assert_eq!(h.series().nilpotency_step, Some(2));
        assert_eq!(h.center(), Subspace::span(3, vec![unit(3, 2)]));
        assert_eq!(h.bracket_basis(1, 2), vec![q(0), q(0), q(-1)]);
    }

    #[test]
    fn jacobi_defect_example() {
        let mut des = vec![Form::zero(5, 2); 5];
        des[3] = e(5, &[1, 2]);
        des[4] = e(5, &[3, 4]);
        let alg = Algebra::from_differentials(des.clone(), Mode::Lax).unwrap();
        assert_eq!(alg.jacobi_defect(), vec![(5, -e(5, &[1, 2, 3]))]);
        assert!(matches!(Algebra::from_differentials(des, Mode::Strict), Err(LieError::Jacobi { .. })));
    }

    #[test]
    fn non_unimodular_two_dim() {
        // de^2 = -e^{12}, i.e. [e_1, e_2] = e_2.
        let alg = Algebra::from_structure(2, [((1, 2, 2), q(-1))], Mode::Strict).unwrap();
        assert!(!alg.is_unimodular());
        assert_eq!(alg.trace_ad_basis(1), q(1));
        assert_eq!(alg.series().nilpotency_step, None);
        assert_eq!(alg.series().solvability_step, Some(2));
    }

    #[test]
    fn abelian_algebra() {
        let alg = Algebra::abelian(4);
        assert_eq!(alg.center().dim(), 4);
        assert_eq!(alg.betti_1(), 4);
        let s = alg.series();
        assert_eq!((s.nilpotency_step, s.solvability_step), (Some(1), Some(1)));
        assert!(e(4, &[1, 3]).differential(&alg).unwrap().is_zero());
    }

    #[test]
    fn structure_validation() {
        assert!(matches!(
            Algebra::from_structure(3, [((2, 1, 3), q(1))], Mode::Strict),
            Err(LieError::NotIncreasing { .. })
        ));
        assert!(matches!(
            Algebra::from_structure(3, [((1, 2, 4), q(1))], Mode::Strict),
            Err(LieError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            Algebra::from_structure(3, [((1, 2, 3), q(1)), ((1, 2, 3), q(2))], Mode::Strict),
            Err(LieError::Duplicate { .. })
        ));
        assert!(h3().bracket(&[q(1)], &[q(1)]).is_err());
    }

    #[test]
    fn change_of_basis_rescales_constants() {
        // f_1 = 2 e_1 doubles [f_1, f_2].
        let p = Matrix::diagonal(&[q(2), q(1), q(1)]);
        let g = h3().change_basis(&p).unwrap();
        assert_eq!(g.de(3), &Form::monomial(3, &[1, 2], q(2)));
    }

    #[test]
    fn d_rank_top_degrees() {
        let h = h3();
        assert_eq!(h.d_rank(1), 1);
        assert_eq!(h.d_rank(2), 0);
        assert_eq!(h.fingerprint().d_ranks, vec![0, 1, 0]);
    }
}
