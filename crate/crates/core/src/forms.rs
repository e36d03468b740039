//! Exterior forms over the dual of a fixed coordinate space.
//!
//! A [`KForm`] of degree `k` on `R^m` is stored as a sparse map from strictly
//! increasing 1-based index tuples `(i_1 < … < i_k)` to coefficients, so
//! `e^{12}` is the key `[1, 2]`. Zero coefficients are never stored and the
//! degree survives vanishing.
//!
//! Evaluation follows the determinant convention
//! `e^{i_1…i_k}(v_1,…,v_k) = det(v_a[i_b])`, so `(α∧β)(X,Y) = α(X)β(Y) − α(Y)β(X)`.
//! Together with `dα(X,Y) = −α([X,Y])` this is the convention of the
//! structure equations `de^k = Σ_{i<j} c_{ij}^k e^{ij}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, BitXor, Neg, Sub};

use thiserror::Error;

use crate::liealg::LieAlgebra;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("expected {expected} vectors, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("vector {index} has length {len}, expected {expected}")]
    VectorLength { index: usize, len: usize, expected: usize },
    #[error("matrix is {rows}x{cols}, expected {expected}x{expected}")]
    Shape { rows: usize, cols: usize, expected: usize },
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("expected a form of degree {expected}, got degree {got}")]
    Degree { expected: usize, got: usize },
}

/// An exterior form with exact coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KForm<T> {
    ambient: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, T>,
}

/// Sorts `idx` in place and returns the sign of the sorting permutation, or
/// `None` when an index repeats.
pub(crate) fn sort_with_sign(idx: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(negative)
    }
}

/// All strictly increasing 1-based `k`-tuples in `1..=n`, lexicographic.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            if n - i + 1 < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Position of the pair `(i, j)`, `1 <= i < j <= n`, in the lexicographic
/// basis of 2-forms.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    let before: usize = (1..i).map(|a| n - a).sum();
    before + (j - i - 1)
}

impl<T: Scalar> KForm<T> {
    pub fn zero(ambient: usize, degree: usize) -> Self {
        KForm { ambient, degree, terms: BTreeMap::new() }
    }

    /// The constant function `c` as a 0-form.
    pub fn constant(ambient: usize, c: T) -> Self {
        let mut f = Self::zero(ambient, 0);
        if !c.is_zero() {
            f.terms.insert(Vec::new(), c);
        }
        f
    }

    /// `c · e^{i_1} ∧ … ∧ e^{i_k}` for arbitrary (possibly unsorted) 1-based indices.
    pub fn monomial(ambient: usize, indices: &[usize], c: T) -> Self {
        for &i in indices {
            assert!(i >= 1 && i <= ambient, "index {i} out of range 1..={ambient}");
        }
        let mut f = Self::zero(ambient, indices.len());
        f.add_term(indices.to_vec(), c);
        f
    }

    /// Basis monomial `e^{i_1…i_k}`.
    pub fn basis(ambient: usize, indices: &[usize]) -> Self {
        Self::monomial(ambient, indices, T::one())
    }

    /// Sums `(indices, coefficient)` terms; indices need not be sorted.
    pub fn from_terms(ambient: usize, degree: usize, terms: impl IntoIterator<Item = (Vec<usize>, T)>) -> Self {
        let mut f = Self::zero(ambient, degree);
        for (idx, c) in terms {
            assert_eq!(idx.len(), degree, "term degree does not match form degree");
            f.add_term(idx, c);
        }
        f
    }

    /// The 1-form `Σ v_i e^i`.
    pub fn from_covector(v: &[T]) -> Self {
        Self::from_terms(v.len(), 1, v.iter().enumerate().map(|(i, c)| (vec![i + 1], c.clone())))
    }

    /// Builds a form from coordinates in the lexicographic basis of `degree`-forms.
    pub fn from_coordinates(ambient: usize, degree: usize, coords: &[T]) -> Self {
        let combos = combinations(ambient, degree);
        assert_eq!(combos.len(), coords.len(), "coordinate vector has the wrong length");
        let mut f = Self::zero(ambient, degree);
        for (idx, c) in combos.into_iter().zip(coords) {
            if !c.is_zero() {
                f.terms.insert(idx, c.clone());
            }
        }
        f
    }

    /// Coordinates in the lexicographic basis of forms of this degree.
    pub fn coordinates(&self) -> Vec<T> {
        if self.degree == 2 {
            let mut v = vec![T::zero(); self.ambient * self.ambient.saturating_sub(1) / 2];
            for (idx, c) in &self.terms {
                v[pair_index(self.ambient, idx[0], idx[1])] = c.clone();
            }
            return v;
        }
        combinations(self.ambient, self.degree)
            .iter()
            .map(|idx| self.terms.get(idx).cloned().unwrap_or_else(T::zero))
            .collect()
    }

    fn add_term(&mut self, mut idx: Vec<usize>, c: T) {
        if c.is_zero() {
            return;
        }
        let Some(negative) = sort_with_sign(&mut idx) else {
            return;
        };
        let c = if negative { -c } else { c };
        match self.terms.get_mut(&idx) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&idx);
                }
            }
            None => {
                self.terms.insert(idx, c);
            }
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Nonzero terms in lexicographic order of their index tuples.
    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &T)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Coefficient of the sorted monomial `e^{indices}`.
    pub fn coeff(&self, indices: &[usize]) -> T {
        self.terms.get(indices).cloned().unwrap_or_else(T::zero)
    }

    /// Value on basis vectors `(e_{i_1}, …, e_{i_k})` for arbitrary 1-based indices.
    pub fn eval_basis(&self, indices: &[usize]) -> T {
        assert_eq!(indices.len(), self.degree, "arity mismatch");
        let mut idx = indices.to_vec();
        match sort_with_sign(&mut idx) {
            None => T::zero(),
            Some(negative) => {
                let c = self.coeff(&idx);
                if negative {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(self.ambient, self.degree);
        }
        KForm {
            ambient: self.ambient,
            degree: self.degree,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.clone() * c.clone())).collect(),
        }
    }

    fn check_same_space(&self, other: &Self) -> Result<(), FormError> {
        if self.ambient != other.ambient {
            return Err(FormError::DimensionMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Result<Self, FormError> {
        self.check_same_space(other)?;
        let mut out = Self::zero(self.ambient, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.iter().any(|i| b.binary_search(i).is_ok()) {
                    continue;
                }
                let mut idx = Vec::with_capacity(a.len() + b.len());
                idx.extend_from_slice(a);
                idx.extend_from_slice(b);
                out.add_term(idx, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    /// `k`-th exterior power, `self ∧ … ∧ self`; the 0-th power is the constant 1.
    pub fn power(&self, k: usize) -> Self {
        let mut out = Self::constant(self.ambient, T::one());
        for _ in 0..k {
            out = &out ^ self;
        }
        out
    }

    /// Alternating multilinear evaluation on `degree` coordinate vectors.
    pub fn eval(&self, vectors: &[Vec<T>]) -> Result<T, FormError> {
        if vectors.len() != self.degree {
            return Err(FormError::Arity { expected: self.degree, got: vectors.len() });
        }
        for (index, v) in vectors.iter().enumerate() {
            if v.len() != self.ambient {
                return Err(FormError::VectorLength { index, len: v.len(), expected: self.ambient });
            }
        }
        let mut total = T::zero();
        for (idx, c) in &self.terms {
            let minor =
                Matrix::from_rows(vectors.iter().map(|v| idx.iter().map(|&i| v[i - 1].clone()).collect()).collect());
            let det = if idx.is_empty() { T::one() } else { minor.determinant() };
            total = total + c.clone() * det;
        }
        Ok(total)
    }

    /// Interior product `ι_v`, i.e. `(ι_v η)(X_2,…) = η(v, X_2, …)`.
    pub fn interior(&self, v: &[T]) -> Result<Self, FormError> {
        if v.len() != self.ambient {
            return Err(FormError::VectorLength { index: 0, len: v.len(), expected: self.ambient });
        }
        if self.degree == 0 {
            return Err(FormError::Degree { expected: 1, got: 0 });
        }
        let mut out = Self::zero(self.ambient, self.degree - 1);
        for (idx, c) in &self.terms {
            for (pos, &i) in idx.iter().enumerate() {
                let vi = &v[i - 1];
                if vi.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = idx.iter().enumerate().filter(|(p, _)| *p != pos).map(|(_, &x)| x).collect();
                let term = c.clone() * vi.clone();
                out.add_term(rest, if pos % 2 == 0 { term } else { -term });
            }
        }
        Ok(out)
    }

    /// Pullback `(M^*η)(X_1,…,X_k) = η(M X_1, …, M X_k)`.
    pub fn pullback(&self, m: &Matrix<T>) -> Result<Self, FormError> {
        if m.nrows() != self.ambient || m.ncols() != self.ambient {
            return Err(FormError::Shape { rows: m.nrows(), cols: m.ncols(), expected: self.ambient });
        }
        // e^a ∘ M = Σ_j M_{aj} e^j
        let images: Vec<Self> = (0..self.ambient).map(|a| Self::from_covector(m.row(a))).collect();
        let mut out = Self::zero(self.ambient, self.degree);
        for (idx, c) in &self.terms {
            let mut term = Self::constant(self.ambient, c.clone());
            for &i in idx {
                term = &term ^ &images[i - 1];
                if term.is_zero() {
                    break;
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Action of an endomorphism `J` on forms: `(Jη)(X_1,…,X_k) = (−1)^k η(JX_1,…,JX_k)`.
    ///
    /// `J` uses the column convention `J e_j = Σ_i J_{ij} e_i`.
    pub fn apply_j(&self, j: &Matrix<T>) -> Result<Self, FormError> {
        let p = self.pullback(j)?;
        Ok(if self.degree.is_multiple_of(2) { p } else { -p })
    }

    /// Chevalley–Eilenberg differential, extended from `de^k` as an
    /// antiderivation.
    pub fn differential(&self, alg: &LieAlgebra<T>) -> Result<Self, FormError> {
        if alg.dim() != self.ambient {
            return Err(FormError::DimensionMismatch { left: self.ambient, right: alg.dim() });
        }
        let mut out = Self::zero(self.ambient, self.degree + 1);
        for (idx, c) in &self.terms {
            for (pos, &i) in idx.iter().enumerate() {
                let de = alg.de(i);
                if de.is_zero() {
                    continue;
                }
                let sign = if pos % 2 == 0 { c.clone() } else { -c.clone() };
                for (pair, dc) in &de.terms {
                    let mut new_idx = Vec::with_capacity(idx.len() + 1);
                    new_idx.extend_from_slice(&idx[..pos]);
                    new_idx.extend_from_slice(pair);
                    new_idx.extend_from_slice(&idx[pos + 1..]);
                    out.add_term(new_idx, sign.clone() * dc.clone());
                }
            }
        }
        Ok(out)
    }

    /// Renames coordinates: index `i` becomes `perm[i - 1]` (1-based targets).
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.ambient, "relabelling must cover every index");
        Self::from_terms(
            self.ambient,
            self.degree,
            self.terms.iter().map(|(idx, c)| (idx.iter().map(|&i| perm[i - 1]).collect(), c.clone())),
        )
    }

    /// Largest index appearing in any term, 0 for the zero form.
    pub fn max_index(&self) -> usize {
        self.terms.keys().filter_map(|k| k.last().copied()).max().unwrap_or(0)
    }
}

impl<T: Scalar> Add for &KForm<T> {
    type Output = KForm<T>;
    fn add(self, rhs: &KForm<T>) -> KForm<T> {
        assert_eq!(self.ambient, rhs.ambient, "ambient dimension mismatch");
        assert_eq!(self.degree, rhs.degree, "degree mismatch in sum");
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for &KForm<T> {
    type Output = KForm<T>;
    fn sub(self, rhs: &KForm<T>) -> KForm<T> {
        assert_eq!(self.ambient, rhs.ambient, "ambient dimension mismatch");
        assert_eq!(self.degree, rhs.degree, "degree mismatch in difference");
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), -v.clone());
        }
        out
    }
}

impl<T: Scalar> Neg for KForm<T> {
    type Output = KForm<T>;
    fn neg(mut self) -> KForm<T> {
        for v in self.terms.values_mut() {
            *v = -v.clone();
        }
        self
    }
}

/// `a ^ b` is the wedge product; panics on mismatched ambient dimensions.
impl<T: Scalar> BitXor for &KForm<T> {
    type Output = KForm<T>;
    fn bitxor(self, rhs: &KForm<T>) -> KForm<T> {
        self.wedge(rhs).expect("wedge of forms on different spaces")
    }
}

/// Writes a 1-based index tuple the way structure equations are usually
/// typeset: `e^{12}` while every index is a single digit, `e^{1,10}` otherwise.
pub fn format_indices(idx: &[usize]) -> String {
    if idx.len() == 1 {
        return format!("e^{}", idx[0]);
    }
    if idx.iter().all(|&i| i < 10) {
        format!("e^{{{}}}", idx.iter().map(ToString::to_string).collect::<String>())
    } else {
        format!("e^{{{}}}", idx.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
    }
}

impl<T: Scalar> fmt::Display for KForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if idx.is_empty() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            write!(f, "{}", format_indices(idx))?;
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for KForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KForm<{}; deg {}>(", self.ambient, self.degree)?;
        let terms: Vec<String> = self.terms.iter().map(|(idx, c)| format!("{c} {}", format_indices(idx))).collect();
        write!(f, "{})", if terms.is_empty() { "0".to_string() } else { terms.join(" + ") })
    }
}
