//! Dense exact linear algebra: matrices, reduced row echelon form, kernels and
//! canonical subspaces.
//!
//! All routines are plain Gauss–Jordan elimination over the scalar field.
//! Reduced row echelon form is unique, so [`Subspace`] equality is structural.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from its rows. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<T>]) -> Self {
        let c = columns.len();
        let r = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged matrix columns");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, v) in entries.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v.clone() * c.clone()).collect() }
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_skew(&self) -> bool {
        self.is_square() && *self == -self.transpose()
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Determinant by fraction-carrying elimination.
    pub fn determinant(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.rows();
        let mut det = T::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return T::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det = det * pivot.clone();
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone() / pivot.clone();
                for c in col..n {
                    let v = a[col][c].clone() * f.clone();
                    a[r][c] = a[r][c].clone() - v;
                }
            }
        }
        det
    }

    /// Inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug: Vec<Vec<T>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
                row
            })
            .collect();
        let (reduced, pivots) = rref(&mut aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_rows(reduced.into_iter().map(|r| r[n..].to_vec()).collect()))
    }

    /// Leading principal pivots of an `LDLᵀ` elimination; all positive iff
    /// the symmetric matrix is positive definite.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        let n = self.rows;
        let mut a = self.rows();
        for k in 0..n {
            let pivot = a[k][k].clone();
            if !pivot.is_positive() {
                return false;
            }
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone() / pivot.clone();
                for j in k..n {
                    let v = a[k][j].clone() * f.clone();
                    a[i][j] = a[i][j].clone() - v;
                }
            }
        }
        true
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect()).collect()
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<T: Scalar> Neg for Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.into_iter().map(|v| -v).collect() }
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> =
                self.data[i * self.cols..(i + 1) * self.cols].iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Gauss–Jordan elimination in place. Returns the nonzero rows of the reduced
/// row echelon form together with their pivot columns.
pub fn rref<T: Scalar>(rows: &mut [Vec<T>]) -> (Vec<Vec<T>>, Vec<usize>) {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = T::one() / rows[r][c].clone();
        for v in rows[r].iter_mut() {
            if !v.is_zero() {
                *v = v.clone() * inv.clone();
            }
        }
        for i in 0..nrows {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for k in c..ncols {
                if rows[r][k].is_zero() {
                    continue;
                }
                let v = rows[r][k].clone() * f.clone();
                rows[i][k] = rows[i][k].clone() - v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (rows[..r].to_vec(), pivots)
}

pub fn rank<T: Scalar>(rows: &[Vec<T>]) -> usize {
    let mut work = rows.to_vec();
    rref(&mut work).1.len()
}

/// Basis of `{x : A x = 0}` where `A` has the given rows and `ncols` columns.
/// The basis is the canonical one read off the reduced echelon form, one
/// vector per free column.
pub fn kernel<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let mut work = rows.to_vec();
    let (reduced, pivots) = rref(&mut work);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); ncols];
            v[f] = T::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Rank of a sparse matrix given by rows of `(column, value)` entries.
///
/// Each incoming row is reduced against the pivots found so far; the pivot of
/// a reduced row is its smallest column.
pub fn sparse_rank<T: Scalar>(rows: impl IntoIterator<Item = BTreeMap<usize, T>>) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, T>> = BTreeMap::new();
    for mut row in rows {
        row.retain(|_, v| !v.is_zero());
        while let Some((&c, v)) = row.iter().next() {
            let Some(prow) = pivots.get(&c) else {
                let inv = T::one() / v.clone();
                for val in row.values_mut() {
                    *val = val.clone() * inv.clone();
                }
                pivots.insert(c, row);
                break;
            };
            let f = v.clone();
            for (k, pv) in prow {
                let entry = row.entry(*k).or_insert_with(T::zero);
                *entry = entry.clone() - pv.clone() * f.clone();
                if entry.is_zero() {
                    row.remove(k);
                }
            }
        }
    }
    pivots.len()
}

/// A linear subspace of `T^n`, stored as its reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace<T> {
    ambient_dim: usize,
    basis: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: Scalar> Subspace<T> {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::span(ambient_dim, (0..ambient_dim).map(|i| unit(ambient_dim, i)))
    }

    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = Vec<T>>) -> Self {
        let mut rows: Vec<Vec<T>> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), ambient_dim, "vector length does not match ambient dimension"))
            .collect();
        let (basis, pivots) = rref(&mut rows);
        Subspace { ambient_dim, basis, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// The reduced echelon basis.
    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the echelon basis; the result is zero iff `v` lies
    /// in the subspace.
    pub fn reduce(&self, v: &[T]) -> Vec<T> {
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (k, rv) in row.iter().enumerate().skip(p) {
                if !rv.is_zero() {
                    w[k] = w[k].clone() - rv.clone() * f.clone();
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[T]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length does not match ambient dimension");
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// Adds `v` to the subspace, keeping the basis in reduced echelon form.
    /// Returns `true` if the dimension grew.
    pub fn insert(&mut self, v: &[T]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = T::one() / w[p].clone();
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        for row in self.basis.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (k, wv) in w.iter().enumerate() {
                if !wv.is_zero() {
                    row[k] = row[k].clone() - wv.clone() * f.clone();
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, w);
        true
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v);
        }
        s
    }

    /// Intersection through the kernel of `[A | -B]`.
    pub fn intersection(&self, other: &Self) -> Self {
        let n = self.ambient_dim;
        let (a, b) = (self.dim(), other.dim());
        let rows: Vec<Vec<T>> = (0..n)
            .map(|i| self.basis.iter().map(|v| v[i].clone()).chain(other.basis.iter().map(|w| -w[i].clone())).collect())
            .collect();
        let vectors = kernel(&rows, a + b).into_iter().map(|coeffs| {
            let mut v = vec![T::zero(); n];
            for (c, basis_vec) in coeffs[..a].iter().zip(&self.basis) {
                if c.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(basis_vec) {
                    *x = x.clone() + c.clone() * y.clone();
                }
            }
            v
        });
        Subspace::span(n, vectors)
    }
}

impl<T: fmt::Display> fmt::Debug for Subspace<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) ", self.basis.len(), self.ambient_dim)?;
        f.debug_list()
            .entries(self.basis.iter().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>()))
            .finish()
    }
}

/// Standard basis vector `e_{i+1}` (0-based position `i`).
pub fn unit<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn axpy<T: Scalar>(alpha: &T, x: &[T], y: &mut [T]) {
    if alpha.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = yi.clone() + alpha.clone() * xi.clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn qv(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn rref_is_canonical() {
        let a = Subspace::span(3, vec![qv(&[1, 2, 3]), qv(&[2, 4, 7])]);
        let b = Subspace::span(3, vec![qv(&[0, 0, 1]), qv(&[3, 6, 9]), qv(&[1, 2, 4])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&qv(&[1, 2, 0])));
        assert!(!a.contains(&qv(&[0, 1, 0])));
    }

    #[test]
    fn kernel_and_rank() {
        let rows = vec![qv(&[1, 1, 0]), qv(&[0, 1, 1])];
        let k = kernel(&rows, 3);
        assert_eq!(k, vec![qv(&[1, -1, 1])]);
        assert_eq!(rank(&rows), 2);
    }

    #[test]
    fn insert_keeps_echelon_form() {
        let mut s = Subspace::zero(3);
        assert!(s.insert(&qv(&[0, 1, 1])));
        assert!(s.insert(&qv(&[1, 1, 0])));
        assert!(!s.insert(&qv(&[1, 2, 1])));
        assert_eq!(s, Subspace::span(3, vec![qv(&[0, 1, 1]), qv(&[1, 1, 0])]));
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::span(3, vec![qv(&[1, 0, 0]), qv(&[0, 1, 0])]);
        let b = Subspace::span(3, vec![qv(&[0, 1, 0]), qv(&[0, 0, 1])]);
        assert_eq!(a.intersection(&b), Subspace::span(3, vec![qv(&[0, 1, 0])]));
    }

    #[test]
    fn determinant_inverse_definiteness() {
        let m = Matrix::from_rows(vec![qv(&[2, 1]), qv(&[1, 1])]);
        assert_eq!(m.determinant(), q(1));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        assert!(m.is_positive_definite());
        assert!(!Matrix::from_rows(vec![qv(&[1, 2]), qv(&[2, 1])]).is_positive_definite());
        assert!(Matrix::from_rows(vec![qv(&[1, 1]), qv(&[1, 1])]).inverse().is_none());
    }

    #[test]
    fn sparse_rank_matches_dense() {
        let rows = vec![qv(&[1, 2, 0, 1]), qv(&[2, 4, 0, 2]), qv(&[0, 0, 3, 1]), qv(&[1, 2, 3, 2])];
        let sparse = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect());
        assert_eq!(sparse_rank(sparse), rank(&rows));
    }
}
