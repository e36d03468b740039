//! Complex structures, Hermitian metrics and the space `Γ ≅ su(n)` of 2-forms.
//!
//! Matrices act on vectors in the column convention `J e_j = Σ_i J_{ij} e_i`.
//! The standard adapted structure is `J e_{2k−1} = −e_{2k}`, `J e_{2k} = e_{2k−1}`.

use num_traits::Zero;
use thiserror::Error;

use crate::forms::{FormError, KForm};
use crate::liealg::{LieAlgebra, LieError};
use crate::linalg::{unit, Matrix, Subspace};
use crate::scalar::Scalar;

pub const DEFAULT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HermitianError {
    #[error("dimension {0} is not even")]
    OddDimension(usize),
    #[error("matrix is {rows}x{cols}, expected {expected}x{expected}")]
    Shape { rows: usize, cols: usize, expected: usize },
    #[error("J does not square to -Id")]
    NotAlmostComplex,
    #[error("J is not integrable: Nijenhuis tensor is nonzero on {0} basis pairs")]
    NotIntegrable(usize),
    #[error("metric is not symmetric")]
    NotSymmetric,
    #[error("metric is not positive definite")]
    NotPositiveDefinite,
    #[error("metric is not J-invariant")]
    Incompatible,
    #[error("operation needs an adapted orthonormal frame; adapt the basis first")]
    NotAdapted,
    #[error("no exact adapted frame over the rationals (orthonormality residual {residual:e})")]
    ApproximateFrame { residual: f64 },
    #[error("adapted frame residual {residual:e} exceeds tolerance {tolerance:e}")]
    Residual { residual: f64, tolerance: f64 },
    #[error("the algebra is not unimodular")]
    NotUnimodular,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("q = {q} out of range 1..={n}")]
    QOutOfRange { n: usize, q: usize },
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct ComplexStructure<T> {
    matrix: Matrix<T>,
    adapted: bool,
}

fn standard_matrix<T: Scalar>(dim: usize) -> Matrix<T> {
    let mut j = Matrix::zeros(dim, dim);
    for k in (0..dim).step_by(2) {
        j[(k + 1, k)] = -T::one();
        j[(k, k + 1)] = T::one();
    }
    j
}

impl<T: Scalar> ComplexStructure<T> {
    /// The standard structure on `R^dim`.
    pub fn standard(dim: usize) -> Result<Self, HermitianError> {
        if !dim.is_multiple_of(2) {
            return Err(HermitianError::OddDimension(dim));
        }
        Ok(ComplexStructure { matrix: standard_matrix(dim), adapted: true })
    }

    /// Wraps a matrix with `J² = −Id`. Integrability is checked separately.
    pub fn new(matrix: Matrix<T>) -> Result<Self, HermitianError> {
        let n = matrix.nrows();
        if matrix.ncols() != n {
            return Err(HermitianError::Shape { rows: n, cols: matrix.ncols(), expected: n });
        }
        if !n.is_multiple_of(2) {
            return Err(HermitianError::OddDimension(n));
        }
        let sq = &matrix * &matrix;
        if sq != -Matrix::identity(n) {
            return Err(HermitianError::NotAlmostComplex);
        }
        let adapted = matrix == standard_matrix(n);
        Ok(ComplexStructure { matrix, adapted })
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn is_adapted(&self) -> bool {
        self.adapted
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        self.matrix.mul_vec(v)
    }
}

impl<T: Scalar> std::fmt::Debug for ComplexStructure<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.adapted {
            write!(f, "ComplexStructure(standard, dim {})", self.dim())
        } else {
            write!(f, "ComplexStructure({:?})", self.matrix)
        }
    }
}

fn check_dims<T: Scalar>(alg: &LieAlgebra<T>, j: &ComplexStructure<T>) -> Result<(), HermitianError> {
    if alg.dim() != j.dim() {
        return Err(HermitianError::Shape { rows: j.dim(), cols: j.dim(), expected: alg.dim() });
    }
    Ok(())
}

/// `N(X,Y) = [JX,JY] − J[JX,Y] − J[X,JY] − [X,Y]`.
pub fn nijenhuis<T: Scalar>(
    alg: &LieAlgebra<T>,
    j: &ComplexStructure<T>,
    x: &[T],
    y: &[T],
) -> Result<Vec<T>, HermitianError> {
    check_dims(alg, j)?;
    let jx = j.apply(x);
    let jy = j.apply(y);
    let a = alg.bracket(&jx, &jy)?;
    let b = j.apply(&alg.bracket(&jx, y)?);
    let c = j.apply(&alg.bracket(x, &jy)?);
    let d = alg.bracket(x, y)?;
    Ok((0..alg.dim()).map(|k| a[k].clone() - b[k].clone() - c[k].clone() - d[k].clone()).collect())
}

/// Integrability report: basis pairs `(i, j)`, `i < j`, where `N(e_i, e_j) ≠ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct NijenhuisReport<T> {
    pub defects: Vec<((usize, usize), Vec<T>)>,
}

impl<T> NijenhuisReport<T> {
    pub fn is_integrable(&self) -> bool {
        self.defects.is_empty()
    }
}

pub fn nijenhuis_report<T: Scalar>(
    alg: &LieAlgebra<T>,
    j: &ComplexStructure<T>,
) -> Result<NijenhuisReport<T>, HermitianError> {
    check_dims(alg, j)?;
    let m = alg.dim();
    let mut defects = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            let n = nijenhuis(alg, j, &unit(m, a), &unit(m, b))?;
            if n.iter().any(|v| !v.is_zero()) {
                defects.push(((a + 1, b + 1), n));
            }
        }
    }
    Ok(NijenhuisReport { defects })
}

pub fn is_complex_structure<T: Scalar>(alg: &LieAlgebra<T>, j: &ComplexStructure<T>) -> Result<bool, HermitianError> {
    Ok(nijenhuis_report(alg, j)?.is_integrable())
}

/// `[JX, JY] = [X, Y]` on basis pairs.
pub fn bracket_test_abelian<T: Scalar>(alg: &LieAlgebra<T>, j: &ComplexStructure<T>) -> Result<bool, HermitianError> {
    check_dims(alg, j)?;
    let m = alg.dim();
    let cols: Vec<Vec<T>> = (0..m).map(|a| j.matrix().column(a)).collect();
    for a in 0..m {
        for b in a + 1..m {
            if alg.bracket(&cols[a], &cols[b])? != alg.bracket_basis(a + 1, b + 1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `J(de^k) = de^k` for every `k`.
pub fn form_test_abelian<T: Scalar>(alg: &LieAlgebra<T>, j: &ComplexStructure<T>) -> Result<bool, HermitianError> {
    check_dims(alg, j)?;
    for de in alg.differentials() {
        if &de.apply_j(j.matrix())? != de {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Abelian complex structure test. Both characterisations are computed and must agree.
pub fn is_abelian<T: Scalar>(alg: &LieAlgebra<T>, j: &ComplexStructure<T>) -> Result<bool, HermitianError> {
    let report = nijenhuis_report(alg, j)?;
    if !report.is_integrable() {
        return Err(HermitianError::NotIntegrable(report.defects.len()));
    }
    let by_bracket = bracket_test_abelian(alg, j)?;
    let by_forms = form_test_abelian(alg, j)?;
    if by_bracket != by_forms {
        return Err(HermitianError::Inconsistent(format!("bracket test says {by_bracket}, form test says {by_forms}")));
    }
    Ok(by_bracket)
}

#[derive(Clone, PartialEq)]
pub struct HermitianStructure<T> {
    alg: LieAlgebra<T>,
    j: ComplexStructure<T>,
    g: Matrix<T>,
    f: KForm<T>,
}

impl<T: Scalar> HermitianStructure<T> {
    /// Validates `g` (symmetric, positive definite, `JᵀgJ = g`) and computes `F(X,Y) = g(X,JY)`.
    pub fn new(alg: LieAlgebra<T>, j: ComplexStructure<T>, g: Matrix<T>) -> Result<Self, HermitianError> {
        check_dims(&alg, &j)?;
        let m = alg.dim();
        if g.nrows() != m || g.ncols() != m {
            return Err(HermitianError::Shape { rows: g.nrows(), cols: g.ncols(), expected: m });
        }
        if !g.is_symmetric() {
            return Err(HermitianError::NotSymmetric);
        }
        if !g.is_positive_definite() {
            return Err(HermitianError::NotPositiveDefinite);
        }
        let jm = j.matrix();
        if &(&jm.transpose() * &g) * jm != g {
            return Err(HermitianError::Incompatible);
        }
        let gj = &g * jm;
        let mut terms = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                if !gj[(a, b)].is_zero() {
                    terms.push((vec![a + 1, b + 1], gj[(a, b)].clone()));
                }
            }
        }
        let f = KForm::from_terms(m, 2, terms);
        Ok(HermitianStructure { alg, j, g, f })
    }

    /// Standard `J` and `g = Id` on the given basis.
    pub fn adapted(alg: LieAlgebra<T>) -> Result<Self, HermitianError> {
        let j = ComplexStructure::standard(alg.dim())?;
        let dim = alg.dim();
        Self::new(alg, j, Matrix::identity(dim))
    }

    pub fn algebra(&self) -> &LieAlgebra<T> {
        &self.alg
    }

    pub fn complex_structure(&self) -> &ComplexStructure<T> {
        &self.j
    }

    pub fn metric(&self) -> &Matrix<T> {
        &self.g
    }

    pub fn fundamental_form(&self) -> &KForm<T> {
        &self.f
    }

    /// Complex dimension `n`.
    pub fn n(&self) -> usize {
        self.alg.dim() / 2
    }

    /// True when `J` is standard and `g = Id`.
    pub fn is_adapted(&self) -> bool {
        self.j.is_adapted() && self.g == Matrix::identity(self.alg.dim())
    }

    /// Rewrites the structure in an exact adapted orthonormal frame, together with
    /// the change of basis (columns are the new frame vectors).
    pub fn to_adapted_frame(&self) -> Result<(Self, Matrix<T>), HermitianError> {
        if self.is_adapted() {
            return Ok((self.clone(), Matrix::identity(self.alg.dim())));
        }
        match adapt_basis(&self.j, &self.g, DEFAULT_TOLERANCE)? {
            Adaptation::Exact(p) => {
                let alg = self.alg.change_basis(&p)?;
                Ok((Self::adapted(alg)?, p))
            }
            Adaptation::Approximate { residual, .. } => Err(HermitianError::ApproximateFrame { residual }),
        }
    }

    fn require_adapted(&self) -> Result<(), HermitianError> {
        if self.is_adapted() {
            Ok(())
        } else {
            Err(HermitianError::NotAdapted)
        }
    }

    /// `Σ_i [J e_i, e_i]`.
    pub fn bracket_sum(&self) -> Vec<T> {
        let m = self.alg.dim();
        let mut sum = vec![T::zero(); m];
        for i in 0..m {
            let v = self.alg.bracket(&self.j.matrix().column(i), &unit(m, i)).expect("dimensions checked");
            for (s, x) in sum.iter_mut().zip(v) {
                *s = s.clone() + x;
            }
        }
        sum
    }
}

impl<T: Scalar> std::fmt::Debug for HermitianStructure<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HermitianStructure({:?}, {:?}, F = {})", self.alg, self.j, self.f)
    }
}

/// `d*F(e_k) = tr ad_{Je_k} − ½ g(Σ_i [Je_i, e_i], e_k)` in an adapted frame.
pub fn codifferential_f<T: Scalar>(h: &HermitianStructure<T>) -> Result<KForm<T>, HermitianError> {
    h.require_adapted()?;
    let m = h.alg.dim();
    let s = h.bracket_sum();
    let coeffs: Vec<T> = (0..m).map(|k| h.alg.trace_ad(&h.j.matrix().column(k)) - T::half() * s[k].clone()).collect();
    Ok(KForm::from_covector(&coeffs))
}

/// The balanced condition evaluated by every available criterion.
#[derive(Clone, PartialEq)]
pub struct BalancedCertificate<T> {
    pub balanced: bool,
    /// `Σ_i [J e_i, e_i]`.
    pub bracket_sum: Vec<T>,
    /// `Σ_i c_{2i−1,2i}^k` for each `k`.
    pub structure_sums: Vec<T>,
    /// `F^{n−1} ∧ de^k = 0` for all `k`.
    pub wedge_test: bool,
    pub codifferential: KForm<T>,
    /// `d(F^{n−1}) = 0`.
    pub closed_power: bool,
    /// First `k` with `Σ_i c_{2i−1,2i}^k ≠ 0`.
    pub witness: Option<(usize, T)>,
}

/// Balanced test for a unimodular algebra in an adapted frame.
pub fn is_balanced<T: Scalar>(h: &HermitianStructure<T>) -> Result<BalancedCertificate<T>, HermitianError> {
    h.require_adapted()?;
    if !h.alg.is_unimodular() {
        return Err(HermitianError::NotUnimodular);
    }
    let m = h.alg.dim();
    let n = h.n();
    let bracket_sum = h.bracket_sum();
    let structure_sums: Vec<T> =
        (1..=m).map(|k| (1..=n).fold(T::zero(), |acc, i| acc + h.alg.c(2 * i - 1, 2 * i, k).clone())).collect();
    let witness = structure_sums.iter().enumerate().find(|(_, s)| !s.is_zero()).map(|(k, s)| (k + 1, s.clone()));
    let fpow = h.f.power(n.saturating_sub(1));
    let mut wedge_test = true;
    for de in h.alg.differentials() {
        if !fpow.wedge(de)?.is_zero() {
            wedge_test = false;
            break;
        }
    }
    let codifferential = codifferential_f(h)?;
    let closed_power = fpow.differential(&h.alg)?.is_zero();

    let verdicts =
        [bracket_sum.iter().all(Zero::is_zero), witness.is_none(), wedge_test, codifferential.is_zero(), closed_power];
    if verdicts.iter().any(|v| *v != verdicts[0]) {
        return Err(HermitianError::Inconsistent(format!("balanced criteria disagree: {verdicts:?}")));
    }
    Ok(BalancedCertificate {
        balanced: verdicts[0],
        bracket_sum,
        structure_sums,
        wedge_test,
        codifferential,
        closed_power,
        witness,
    })
}

/// `Γ_q ⊆ Λ²(R^{2n})`, spanned by `β_r` and `γ_{ij}` with `2i < j ≤ 2q`.
#[derive(Clone, PartialEq)]
pub struct GammaSpace<T> {
    pub n: usize,
    pub q: usize,
    pub basis: Vec<KForm<T>>,
    pub labels: Vec<String>,
    span: Subspace<T>,
}

impl<T: Scalar> GammaSpace<T> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn subspace(&self) -> &Subspace<T> {
        &self.span
    }
}

impl<T: Scalar> std::fmt::Debug for GammaSpace<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Gamma_{}(n = {}, dim {})", self.q, self.n, self.dim())
    }
}

/// `γ_{ij} = e^{2i−1,j} − e^{2i} ∧ Je^j`.
pub fn gamma_ij<T: Scalar>(n: usize, i: usize, j: usize) -> KForm<T> {
    let dim = 2 * n;
    let l = j.div_ceil(2);
    if j % 2 == 1 {
        &KForm::basis(dim, &[2 * i - 1, j]) + &KForm::basis(dim, &[2 * i, 2 * l])
    } else {
        &KForm::basis(dim, &[2 * i - 1, j]) - &KForm::basis(dim, &[2 * i, 2 * l - 1])
    }
}

/// `β_r = e^{2r−1,2r} − e^{2r+1,2r+2}`.
pub fn beta_r<T: Scalar>(n: usize, r: usize) -> KForm<T> {
    let dim = 2 * n;
    &KForm::basis(dim, &[2 * r - 1, 2 * r]) - &KForm::basis(dim, &[2 * r + 1, 2 * r + 2])
}

pub fn gamma_basis<T: Scalar>(n: usize, q: usize) -> Result<GammaSpace<T>, HermitianError> {
    if q == 0 || q > n {
        return Err(HermitianError::QOutOfRange { n, q });
    }
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    for p in 2..=q {
        basis.push(beta_r(n, p - 1));
        labels.push(format!("beta_{}", p - 1));
        for i in 1..p {
            for j in [2 * p - 1, 2 * p] {
                basis.push(gamma_ij(n, i, j));
                labels.push(format!("gamma_{i},{j}"));
            }
        }
    }
    let span = Subspace::span(n * (2 * n - 1), basis.iter().map(KForm::coordinates));
    Ok(GammaSpace { n, q, basis, labels, span })
}

pub fn in_gamma<T: Scalar>(eta: &KForm<T>, space: &GammaSpace<T>) -> Result<bool, HermitianError> {
    if eta.degree() != 2 {
        return Err(FormError::Degree { expected: 2, got: eta.degree() }.into());
    }
    if eta.ambient_dim() != 2 * space.n {
        return Err(FormError::DimensionMismatch { left: eta.ambient_dim(), right: 2 * space.n }.into());
    }
    Ok(space.span.contains(&eta.coordinates()))
}

/// Pointwise membership in `Γ = Γ_n`: `J`-invariance plus vanishing trace
/// `Σ_r η(e_{2r−1}, e_{2r}) = 0`, in an adapted frame.
pub fn satisfies_gamma_conditions<T: Scalar>(eta: &KForm<T>) -> Result<bool, HermitianError> {
    if eta.degree() != 2 {
        return Err(FormError::Degree { expected: 2, got: eta.degree() }.into());
    }
    let m = eta.ambient_dim();
    if !m.is_multiple_of(2) {
        return Err(HermitianError::OddDimension(m));
    }
    let n = m / 2;
    let v = |a: usize, b: usize| eta.eval_basis(&[a, b]);
    for r in 1..=n {
        for s in 1..=n {
            if v(2 * r, 2 * s) != v(2 * r - 1, 2 * s - 1) || v(2 * r, 2 * s - 1) != -v(2 * r - 1, 2 * s) {
                return Ok(false);
            }
        }
    }
    let trace = (1..=n).fold(T::zero(), |acc, r| acc + v(2 * r - 1, 2 * r));
    Ok(trace.is_zero())
}

/// `φ(e^{ij}) = E_{ij} − E_{ji}`.
pub fn phi<T: Scalar>(eta: &KForm<T>) -> Result<Matrix<T>, HermitianError> {
    if eta.degree() != 2 {
        return Err(FormError::Degree { expected: 2, got: eta.degree() }.into());
    }
    let m = eta.ambient_dim();
    let mut out = Matrix::zeros(m, m);
    for (idx, c) in eta.terms() {
        let (i, j) = (idx[0] - 1, idx[1] - 1);
        out[(i, j)] = c.clone();
        out[(j, i)] = -c.clone();
    }
    Ok(out)
}

pub fn phi_inverse<T: Scalar>(m: &Matrix<T>) -> Result<KForm<T>, HermitianError> {
    if !m.is_square() {
        return Err(HermitianError::Shape { rows: m.nrows(), cols: m.ncols(), expected: m.nrows() });
    }
    if !m.is_skew() {
        return Err(HermitianError::NotSkew);
    }
    let n = m.nrows();
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !m[(i, j)].is_zero() {
                terms.push((vec![i + 1, j + 1], m[(i, j)].clone()));
            }
        }
    }
    Ok(KForm::from_terms(n, 2, terms))
}

/// Result of adapting a frame to `(J, g)`.
#[derive(Clone, PartialEq)]
pub enum Adaptation<T> {
    /// Exact change of basis; columns are the frame vectors.
    Exact(Matrix<T>),
    /// Floating-point frame, tainted: exact operations refuse it.
    Approximate { frame: Vec<Vec<f64>>, residual: f64, tolerance: f64 },
}

impl<T: Scalar> std::fmt::Debug for Adaptation<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Adaptation::Exact(p) => write!(f, "Exact({p:?})"),
            Adaptation::Approximate { frame, residual, tolerance } => f
                .debug_struct("Approximate")
                .field("frame", frame)
                .field("residual", residual)
                .field("tolerance", tolerance)
                .finish(),
        }
    }
}

impl<T: Scalar> std::fmt::Debug for BalancedCertificate<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |v: &[T]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        f.debug_struct("BalancedCertificate")
            .field("balanced", &self.balanced)
            .field("bracket_sum", &show(&self.bracket_sum))
            .field("structure_sums", &show(&self.structure_sums))
            .field("wedge_test", &self.wedge_test)
            .field("codifferential", &self.codifferential)
            .field("closed_power", &self.closed_power)
            .field("witness", &self.witness.as_ref().map(|(k, c)| (*k, c.to_string())))
            .finish()
    }
}

impl<T> Adaptation<T> {
    pub fn is_exact(&self) -> bool {
        matches!(self, Adaptation::Exact(_))
    }
}

/// Hermitian Gram–Schmidt: produces an orthonormal frame with `J f_{2k−1} = −f_{2k}`.
pub fn adapt_basis<T: Scalar>(
    j: &ComplexStructure<T>,
    g: &Matrix<T>,
    tolerance: f64,
) -> Result<Adaptation<T>, HermitianError> {
    let m = j.dim();
    if g.nrows() != m || g.ncols() != m {
        return Err(HermitianError::Shape { rows: g.nrows(), cols: g.ncols(), expected: m });
    }
    if !g.is_symmetric() {
        return Err(HermitianError::NotSymmetric);
    }
    if !g.is_positive_definite() {
        return Err(HermitianError::NotPositiveDefinite);
    }
    let jm = j.matrix();
    if &(&jm.transpose() * g) * jm != *g {
        return Err(HermitianError::Incompatible);
    }
    let inner = |a: &[T], b: &[T]| -> T {
        let gb = g.mul_vec(b);
        a.iter().zip(&gb).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
    };

    // Orthogonal, unnormalised frame with squared norms.
    let mut frame: Vec<(Vec<T>, T)> = Vec::with_capacity(m);
    for i in 0..m {
        if frame.len() == m {
            break;
        }
        let mut v = unit::<T>(m, i);
        for (f, norm) in &frame {
            let c = inner(&v, f) / norm.clone();
            for (x, y) in v.iter_mut().zip(f) {
                *x = x.clone() - c.clone() * y.clone();
            }
        }
        let norm = inner(&v, &v);
        if norm.is_zero() {
            continue;
        }
        let w: Vec<T> = j.apply(&v).into_iter().map(|x| -x).collect();
        frame.push((v, norm.clone()));
        frame.push((w, norm));
    }

    let roots: Option<Vec<T>> = frame.iter().map(|(_, n)| n.exact_sqrt()).collect();
    if let Some(roots) = roots {
        let cols: Vec<Vec<T>> =
            frame.iter().zip(&roots).map(|((f, _), r)| f.iter().map(|x| x.clone() / r.clone()).collect()).collect();
        return Ok(Adaptation::Exact(Matrix::from_columns(&cols)));
    }

    let to_f = |x: &T| x.to_f64().unwrap_or(f64::NAN);
    let cols: Vec<Vec<f64>> = frame
        .iter()
        .map(|(f, n)| {
            let s = to_f(n).sqrt();
            f.iter().map(|x| to_f(x) / s).collect()
        })
        .collect();
    let gf = g.to_f64();
    let mut residual = 0.0f64;
    for a in 0..m {
        for b in 0..m {
            let mut ip = 0.0;
            for r in 0..m {
                for s in 0..m {
                    ip += cols[a][r] * gf[r][s] * cols[b][s];
                }
            }
            let target = if a == b { 1.0 } else { 0.0 };
            residual = residual.max((ip - target).abs());
        }
    }
    if residual > tolerance {
        return Err(HermitianError::Residual { residual, tolerance });
    }
    // Row-major frame matrix with the frame vectors as columns.
    let frame_matrix = (0..m).map(|r| (0..m).map(|c| cols[c][r]).collect()).collect();
    Ok(Adaptation::Approximate { frame: frame_matrix, residual, tolerance })
}

/// True when `η(X, ·) = 0` for every `X` in the subspace.
pub fn annihilates<T: Scalar>(eta: &KForm<T>, space: &Subspace<T>) -> Result<bool, HermitianError> {
    for z in space.basis() {
        if !eta.interior(z)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `J` maps the subspace into itself.
pub fn is_j_invariant<T: Scalar>(j: &ComplexStructure<T>, space: &Subspace<T>) -> bool {
    space.basis().iter().all(|v| space.contains(&j.apply(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::Mode;
    use crate::{Algebra, Form, Q};

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn e(n: usize, idx: &[usize]) -> Form {
        Form::basis(n, idx)
    }

    fn h3_r3() -> Algebra {
        let mut des = vec![Form::zero(6, 2); 6];
        des[5] = e(6, &[1, 2]);
        Algebra::from_differentials(des, Mode::Strict).unwrap()
    }

    #[test]
    fn standard_j_entries() {
        let j = ComplexStructure::<Q>::standard(4).unwrap();
        assert_eq!(j.apply(&unit(4, 0)), vec![q(0), q(-1), q(0), q(0)]);
        assert!(ComplexStructure::<Q>::standard(3).is_err());
        assert!(ComplexStructure::new(Matrix::<Q>::identity(2)).is_err());
    }

    #[test]
    fn abelian_algebra_any_j() {
        let alg = Algebra::abelian(4);
        let j = ComplexStructure::new(Matrix::from_rows(vec![
            vec![q(0), q(0), q(1), q(0)],
            vec![q(0), q(0), q(0), q(1)],
            vec![q(-1), q(0), q(0), q(0)],
            vec![q(0), q(-1), q(0), q(0)],
        ]))
        .unwrap();
        assert!(is_complex_structure(&alg, &j).unwrap());
        assert!(is_abelian(&alg, &j).unwrap());
    }

    #[test]
    fn codifferential_h3_r3() {
        let h = HermitianStructure::adapted(h3_r3()).unwrap();
        assert_eq!(h.bracket_sum(), vec![q(0), q(0), q(0), q(0), q(0), q(-2)]);
        assert_eq!(codifferential_f(&h).unwrap(), e(6, &[6]));
        let cert = is_balanced(&h).unwrap();
        assert!(!cert.balanced);
        assert_eq!(cert.witness, Some((6, q(1))));
    }

    #[test]
    fn fundamental_form_adapted() {
        let h = HermitianStructure::adapted(Algebra::abelian(4)).unwrap();
        assert_eq!(h.fundamental_form(), &(&e(4, &[1, 2]) + &e(4, &[3, 4])));
        assert!(codifferential_f(&h).unwrap().is_zero());
    }

    #[test]
    fn non_unimodular_balanced_is_error() {
        let alg = Algebra::from_structure(2, [((1, 2, 2), q(-1))], Mode::Strict).unwrap();
        let h = HermitianStructure::adapted(alg).unwrap();
        assert_eq!(is_balanced(&h), Err(HermitianError::NotUnimodular));
    }

    #[test]
    fn gamma_n2() {
        let g = gamma_basis::<Q>(2, 2).unwrap();
        assert_eq!(g.dim(), 3);
        assert_eq!(g.basis[0], &e(4, &[1, 2]) - &e(4, &[3, 4]));
        assert_eq!(g.basis[1], &e(4, &[1, 3]) + &e(4, &[2, 4]));
        assert_eq!(g.basis[2], &e(4, &[1, 4]) - &e(4, &[2, 3]));
        assert_eq!(gamma_basis::<Q>(3, 1).unwrap().dim(), 0);
        assert!(gamma_basis::<Q>(3, 4).is_err());
    }

    #[test]
    fn gamma_dimensions_and_invariance() {
        for n in 2..=6 {
            let j = ComplexStructure::<Q>::standard(2 * n).unwrap();
            let f = HermitianStructure::adapted(Algebra::abelian(2 * n)).unwrap().fundamental_form().power(n - 1);
            for qq in 1..=n {
                let g = gamma_basis::<Q>(n, qq).unwrap();
                assert_eq!(g.dim(), qq * qq - 1);
                assert_eq!(g.subspace().dim(), qq * qq - 1);
            }
            for eta in &gamma_basis::<Q>(n, n).unwrap().basis {
                assert_eq!(&eta.apply_j(j.matrix()).unwrap(), eta);
                assert!(f.wedge(eta).unwrap().is_zero());
                assert!(satisfies_gamma_conditions(eta).unwrap());
            }
        }
    }

    #[test]
    fn membership_examples() {
        let g = gamma_basis::<Q>(3, 3).unwrap();
        assert!(in_gamma(&beta_r(3, 1), &g).unwrap());
        assert!(!in_gamma(&e(6, &[1, 2]), &g).unwrap());
        assert!(!in_gamma(&(&e(6, &[1, 3]) - &e(6, &[2, 4])), &g).unwrap());
        assert!(in_gamma(&e(6, &[1]), &g).is_err());
    }

    #[test]
    fn phi_examples() {
        let m = phi(&e(2, &[1, 2])).unwrap();
        assert_eq!(m, Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(-1), q(0)]]));
        let b = phi(&beta_r::<Q>(2, 1)).unwrap();
        assert_eq!((b[(0, 1)].clone(), b[(2, 3)].clone(), b[(3, 2)].clone()), (q(1), q(-1), q(1)));
        let g13 = gamma_ij::<Q>(2, 1, 3);
        assert_eq!(phi_inverse(&phi(&g13).unwrap()).unwrap(), g13);
        assert!(phi_inverse(&Matrix::<Q>::identity(2)).is_err());
    }

    #[test]
    fn phi_gamma_commutator_closed() {
        let n = 3;
        let g = gamma_basis::<Q>(n, n).unwrap();
        let j0 = ComplexStructure::<Q>::standard(2 * n).unwrap();
        let mats: Vec<Matrix<Q>> = g.basis.iter().map(|b| phi(b).unwrap()).collect();
        for a in &mats {
            assert!(a.trace().is_zero());
            assert!(a.commutator(j0.matrix()).is_zero());
            for b in &mats {
                let c = phi_inverse(&a.commutator(b)).unwrap();
                assert!(in_gamma(&c, &g).unwrap());
            }
        }
    }

    #[test]
    fn adapt_identity_and_rescale() {
        let j = ComplexStructure::<Q>::standard(4).unwrap();
        assert_eq!(
            adapt_basis(&j, &Matrix::identity(4), DEFAULT_TOLERANCE).unwrap(),
            Adaptation::Exact(Matrix::identity(4))
        );
        let g = Matrix::diagonal(&[q(4), q(4), q(1), q(1)]);
        let half = Q::new(1.into(), 2.into());
        assert_eq!(
            adapt_basis(&j, &g, DEFAULT_TOLERANCE).unwrap(),
            Adaptation::Exact(Matrix::diagonal(&[half.clone(), half, q(1), q(1)]))
        );
        let g2 = Matrix::diagonal(&[q(2), q(2), q(1), q(1)]);
        assert!(!adapt_basis(&j, &g2, DEFAULT_TOLERANCE).unwrap().is_exact());
        assert_eq!(
            adapt_basis(&j, &Matrix::diagonal(&[q(1), q(-1), q(1), q(1)]), DEFAULT_TOLERANCE),
            Err(HermitianError::NotPositiveDefinite)
        );
        assert_eq!(
            adapt_basis(&j, &Matrix::diagonal(&[q(1), q(2), q(1), q(1)]), DEFAULT_TOLERANCE),
            Err(HermitianError::Incompatible)
        );
    }

    #[test]
    fn to_adapted_frame_transforms_algebra() {
        // f_1 = e_1/2, f_2 = e_2/2 scales [f_1, f_2] by 1/4.
        let mut des = vec![Form::zero(4, 2); 4];
        des[2] = e(4, &[1, 2]);
        let alg = Algebra::from_differentials(des, Mode::Lax).unwrap();
        let g = Matrix::diagonal(&[q(4), q(4), q(1), q(1)]);
        let h = HermitianStructure::new(alg, ComplexStructure::standard(4).unwrap(), g).unwrap();
        let (ha, _) = h.to_adapted_frame().unwrap();
        assert!(ha.is_adapted());
        assert_eq!(ha.algebra().de(3), &Form::monomial(4, &[1, 2], Q::new(1.into(), 4.into())));
    }
}
