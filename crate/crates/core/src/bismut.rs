//! Levi-Civita and Bismut connections of left-invariant Hermitian structures,
//! their curvature and the holonomy algebra.
//!
//! Everything here works in an adapted orthonormal frame (`J` standard, `g = Id`).
//! Connection 1-forms are `σ^i_j(e_k) = g(∇_{e_k} e_j, e_i)`, curvature
//! `Ω^i_j = dσ^i_j + Σ_k σ^i_k ∧ σ^k_j`, and curvature endomorphisms are
//! identified with 2-forms by `R^{rs}(e_i, e_j) = −Ω^i_j(e_r, e_s)`.

use rayon::prelude::*;
use thiserror::Error;

use crate::forms::{pair_index, FormError, KForm};
use crate::hermitian::{
    annihilates, gamma_basis, in_gamma, is_abelian, is_balanced, phi, satisfies_gamma_conditions, HermitianError,
    HermitianStructure,
};
use crate::linalg::{kernel, Matrix, Subspace};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BismutError {
    #[error("operation needs an exact adapted orthonormal frame")]
    NotAdapted,
    #[error("the complex structure is not abelian")]
    NotAbelian,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("holonomy closure did not stabilise within {0} rounds")]
    IterationCap(usize),
    #[error(transparent)]
    Hermitian(#[from] HermitianError),
    #[error(transparent)]
    Form(#[from] FormError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectionKind {
    LeviCivita,
    Bismut,
}

/// The matrix of connection 1-forms `σ^i_j`.
#[derive(Clone, PartialEq)]
pub struct ConnectionForms<T> {
    pub kind: ConnectionKind,
    forms: Vec<Vec<KForm<T>>>,
}

impl<T: Scalar> ConnectionForms<T> {
    pub fn dim(&self) -> usize {
        self.forms.len()
    }

    /// `σ^i_j`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &KForm<T> {
        &self.forms[i - 1][j - 1]
    }

    /// `S[k][s] = σ^k_s(e_j)`, the connection matrix in direction `e_j`.
    pub fn at(&self, j: usize) -> Matrix<T> {
        let m = self.dim();
        let mut s = Matrix::zeros(m, m);
        for k in 0..m {
            for l in 0..m {
                s[(k, l)] = self.forms[k][l].coeff(&[j]);
            }
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.forms.iter().flatten().all(KForm::is_zero)
    }
}

impl<T: Scalar> std::fmt::Debug for ConnectionForms<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} connection forms [", self.kind)?;
        for (i, row) in self.forms.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                if !s.is_zero() && i < j {
                    write!(f, " s^{}_{} = {};", i + 1, j + 1, s)?;
                }
            }
        }
        write!(f, " ]")
    }
}

/// The matrix of curvature 2-forms `Ω^i_j`.
#[derive(Clone, PartialEq)]
pub struct CurvatureForms<T> {
    forms: Vec<Vec<KForm<T>>>,
}

impl<T: Scalar> CurvatureForms<T> {
    pub fn dim(&self) -> usize {
        self.forms.len()
    }

    /// `Ω^i_j`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &KForm<T> {
        &self.forms[i - 1][j - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.forms.iter().flatten().all(KForm::is_zero)
    }
}

impl<T: Scalar> std::fmt::Debug for CurvatureForms<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "curvature forms [")?;
        for (i, row) in self.forms.iter().enumerate() {
            for (j, o) in row.iter().enumerate() {
                if !o.is_zero() && i < j {
                    write!(f, " W^{}_{} = {};", i + 1, j + 1, o)?;
                }
            }
        }
        write!(f, " ]")
    }
}

fn require_adapted<T: Scalar>(h: &HermitianStructure<T>) -> Result<(), BismutError> {
    if h.is_adapted() {
        Ok(())
    } else {
        Err(BismutError::NotAdapted)
    }
}

fn build_forms<T: Scalar>(m: usize, value: impl Fn(usize, usize, usize) -> T) -> Vec<Vec<KForm<T>>> {
    (1..=m)
        .map(|i| {
            (1..=m)
                .map(|j| {
                    let coeffs: Vec<T> = (1..=m).map(|k| value(i, j, k)).collect();
                    KForm::from_covector(&coeffs)
                })
                .collect()
        })
        .collect()
}

/// `(σ^g)^i_j(e_k) = ½(c_{jk}^i − c_{ij}^k + c_{ki}^j)`.
pub fn levi_civita_forms<T: Scalar>(h: &HermitianStructure<T>) -> Result<ConnectionForms<T>, BismutError> {
    require_adapted(h)?;
    let alg = h.algebra();
    let forms = build_forms(alg.dim(), |i, j, k| {
        T::half() * (alg.c(j, k, i).clone() - alg.c(i, j, k).clone() + alg.c(k, i, j).clone())
    });
    Ok(ConnectionForms { kind: ConnectionKind::LeviCivita, forms })
}

/// Torsion 3-form `T = J dF`. For abelian `J` it is cross-checked against `Σ_i e^i ∧ de^i`.
pub fn bismut_torsion<T: Scalar>(h: &HermitianStructure<T>) -> Result<KForm<T>, BismutError> {
    let alg = h.algebra();
    let df = h.fundamental_form().differential(alg)?;
    let t = df.apply_j(h.complex_structure().matrix())?;
    if h.is_adapted() && abelian_j(h)? {
        let m = alg.dim();
        let mut alt = KForm::zero(m, 3);
        for i in 1..=m {
            alt = &alt + &KForm::basis(m, &[i]).wedge(alg.de(i))?;
        }
        if alt != t {
            return Err(BismutError::Inconsistent(format!("J dF = {t} but sum e^i de^i = {alt}")));
        }
    }
    Ok(t)
}

fn abelian_j<T: Scalar>(h: &HermitianStructure<T>) -> Result<bool, BismutError> {
    match is_abelian(h.algebra(), h.complex_structure()) {
        Ok(b) => Ok(b),
        Err(HermitianError::NotIntegrable(_)) => Ok(false),
        Err(e) => Err(e.into()),
    }
}

/// Abelian fast path `σ^i_j = −Σ_k c_{ij}^k e^k`.
pub fn bismut_forms_abelian<T: Scalar>(h: &HermitianStructure<T>) -> Result<ConnectionForms<T>, BismutError> {
    require_adapted(h)?;
    let alg = h.algebra();
    let forms = build_forms(alg.dim(), |i, j, k| -alg.c(i, j, k).clone());
    Ok(ConnectionForms { kind: ConnectionKind::Bismut, forms })
}

/// `σ^i_j(e_k) = (σ^g)^i_j(e_k) − ½ T(e_i, e_j, e_k)`.
///
/// For abelian `J` the result is compared with the fast path and the
/// `J`-symmetries of the connection matrix are verified.
pub fn bismut_forms<T: Scalar>(h: &HermitianStructure<T>) -> Result<ConnectionForms<T>, BismutError> {
    require_adapted(h)?;
    let alg = h.algebra();
    let t = bismut_torsion(h)?;
    let lc = levi_civita_forms(h)?;
    let m = alg.dim();
    let forms = build_forms(m, |i, j, k| lc.forms[i - 1][j - 1].coeff(&[k]) - T::half() * t.eval_basis(&[i, j, k]));
    let sigma = ConnectionForms { kind: ConnectionKind::Bismut, forms };
    if abelian_j(h)? {
        let fast = bismut_forms_abelian(h)?;
        if fast != sigma {
            return Err(BismutError::Inconsistent("Bismut forms differ from the abelian fast path".into()));
        }
        for i in 1..=m / 2 {
            for j in 1..=m / 2 {
                let (a, b) = (2 * i - 1, 2 * j - 1);
                if sigma.get(a + 1, b + 1) != sigma.get(a, b) || *sigma.get(a, b + 1) != -sigma.get(a + 1, b).clone() {
                    return Err(BismutError::Inconsistent("Bismut forms are not J-invariant".into()));
                }
            }
        }
    }
    Ok(sigma)
}

/// `Ω^i_j = dσ^i_j + Σ_k σ^i_k ∧ σ^k_j`.
pub fn curvature_forms<T: Scalar>(
    sigma: &ConnectionForms<T>,
    alg: &crate::liealg::LieAlgebra<T>,
) -> Result<CurvatureForms<T>, BismutError> {
    let m = sigma.dim();
    if alg.dim() != m {
        return Err(FormError::DimensionMismatch { left: m, right: alg.dim() }.into());
    }
    let mut forms = vec![vec![KForm::zero(m, 2); m]; m];
    for i in 0..m {
        for j in 0..m {
            let mut omega = sigma.forms[i][j].differential(alg)?;
            for k in 0..m {
                let (a, b) = (&sigma.forms[i][k], &sigma.forms[k][j]);
                if !a.is_zero() && !b.is_zero() {
                    omega = &omega + &a.wedge(b)?;
                }
            }
            forms[i][j] = omega;
        }
    }
    Ok(CurvatureForms { forms })
}

/// `R^{rs}` for `r < s` in lexicographic order.
pub fn curvature_endomorphisms<T: Scalar>(omega: &CurvatureForms<T>) -> Vec<((usize, usize), KForm<T>)> {
    let m = omega.dim();
    let mut out = Vec::new();
    for r in 1..=m {
        for s in r + 1..=m {
            let mut terms = Vec::new();
            for i in 1..=m {
                for j in i + 1..=m {
                    let v = omega.get(i, j).coeff(&[r, s]);
                    if !v.is_zero() {
                        terms.push((vec![i, j], -v));
                    }
                }
            }
            out.push(((r, s), KForm::from_terms(m, 2, terms)));
        }
    }
    out
}

/// `(∇_{e_j} γ)(e_r, e_s) = Σ_k σ^k_s(e_j) γ(e_k, e_r) − σ^k_r(e_j) γ(e_k, e_s)`.
pub fn covariant_derivative_2form<T: Scalar>(
    sigma: &ConnectionForms<T>,
    j: usize,
    gamma: &KForm<T>,
) -> Result<KForm<T>, BismutError> {
    let m = sigma.dim();
    if gamma.degree() != 2 {
        return Err(FormError::Degree { expected: 2, got: gamma.degree() }.into());
    }
    if gamma.ambient_dim() != m {
        return Err(FormError::DimensionMismatch { left: gamma.ambient_dim(), right: m }.into());
    }
    if j == 0 || j > m {
        return Err(FormError::IndexOutOfRange { index: j, dim: m }.into());
    }
    let s = sigma.at(j);
    let mut terms = Vec::new();
    for r in 1..=m {
        for t in r + 1..=m {
            let mut v = T::zero();
            for k in 1..=m {
                let a = &s[(k - 1, t - 1)];
                if !a.is_zero() {
                    v = v + a.clone() * gamma.eval_basis(&[k, r]);
                }
                let b = &s[(k - 1, r - 1)];
                if !b.is_zero() {
                    v = v - b.clone() * gamma.eval_basis(&[k, t]);
                }
            }
            if !v.is_zero() {
                terms.push((vec![r, t], v));
            }
        }
    }
    Ok(KForm::from_terms(m, 2, terms))
}

fn skew_to_coords<T: Scalar>(mat: &Matrix<T>) -> Vec<T> {
    let m = mat.nrows();
    let mut out = vec![T::zero(); m * (m - 1) / 2];
    for a in 0..m {
        for b in a + 1..m {
            out[pair_index(m, a + 1, b + 1)] = mat[(a, b)].clone();
        }
    }
    out
}

fn coords_to_skew<T: Scalar>(m: usize, v: &[T]) -> Matrix<T> {
    let mut out = Matrix::zeros(m, m);
    for a in 0..m {
        for b in a + 1..m {
            let c = &v[pair_index(m, a + 1, b + 1)];
            if !c.is_zero() {
                out[(a, b)] = c.clone();
                out[(b, a)] = -c.clone();
            }
        }
    }
    out
}

/// Outcome of the containment `hol ⊆ su(n − k)` for `dim 𝔷 = 2k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremCheck {
    /// Unmet hypotheses; empty when the statement applies.
    pub unmet: Vec<String>,
    pub bound: Option<usize>,
    /// `None` when not applicable.
    pub holds: Option<bool>,
}

impl TheoremCheck {
    pub fn is_applicable(&self) -> bool {
        self.unmet.is_empty()
    }
}

#[derive(Clone, PartialEq)]
pub struct HolonomyReport<T> {
    /// Echelon basis of the holonomy algebra as 2-forms.
    pub basis: Vec<KForm<T>>,
    pub dim: usize,
    /// Rounds of covariant differentiation until stable.
    pub iterations: usize,
    /// `dim span{R^{rs}}`.
    pub curvature_dim: usize,
    pub center_dim: usize,
    /// Smallest `q` with every basis element in `Γ_q`, central pairs relabelled last.
    pub minimal_q: Option<usize>,
    pub theorem: TheoremCheck,
    /// One more round of covariant derivatives adds nothing.
    pub idempotent: bool,
    /// `φ(basis)` is closed under the matrix commutator.
    pub commutator_closed: bool,
}

impl<T: Scalar> std::fmt::Debug for HolonomyReport<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HolonomyReport")
            .field("dim", &self.dim)
            .field("basis", &self.basis.iter().map(ToString::to_string).collect::<Vec<_>>())
            .field("iterations", &self.iterations)
            .field("curvature_dim", &self.curvature_dim)
            .field("center_dim", &self.center_dim)
            .field("minimal_q", &self.minimal_q)
            .field("theorem", &self.theorem)
            .field("idempotent", &self.idempotent)
            .field("commutator_closed", &self.commutator_closed)
            .finish()
    }
}

fn derivative_grid<T: Scalar>(dirs: &[Matrix<T>], frontier: &[Matrix<T>]) -> Vec<Vec<T>> {
    frontier.par_iter().flat_map_iter(|g| dirs.iter().map(move |s| skew_to_coords(&s.commutator(g)))).collect()
}

/// Holonomy algebra of the Bismut connection: curvature endomorphisms and
/// all their iterated covariant derivatives.
pub fn holonomy_algebra<T: Scalar>(h: &HermitianStructure<T>) -> Result<HolonomyReport<T>, BismutError> {
    require_adapted(h)?;
    let alg = h.algebra();
    let m = alg.dim();
    let sigma = bismut_forms(h)?;
    let omega = curvature_forms(&sigma, alg)?;
    let dirs: Vec<Matrix<T>> = (1..=m).map(|j| sigma.at(j)).collect();

    let ambient = m * (m - 1) / 2;
    let mut space = Subspace::zero(ambient);
    let mut frontier: Vec<Matrix<T>> = Vec::new();
    for (_, r) in curvature_endomorphisms(&omega) {
        let v = r.coordinates();
        if space.insert(&v) {
            frontier.push(coords_to_skew(m, &v));
        }
    }
    let curvature_dim = space.dim();

    let cap = ambient + 1;
    let mut iterations = 0;
    while !frontier.is_empty() {
        if iterations == cap {
            return Err(BismutError::IterationCap(cap));
        }
        iterations += 1;
        let mut next = Vec::new();
        for v in derivative_grid(&dirs, &frontier) {
            if space.insert(&v) {
                next.push(coords_to_skew(m, &v));
            }
        }
        frontier = next;
    }

    let mats: Vec<Matrix<T>> = space.basis().iter().map(|v| coords_to_skew(m, v)).collect();
    let idempotent = derivative_grid(&dirs, &mats).iter().all(|v| space.contains(v));
    let commutator_closed = mats
        .par_iter()
        .enumerate()
        .all(|(a, x)| mats[a + 1..].iter().all(|y| space.contains(&skew_to_coords(&x.commutator(y)))));

    let basis: Vec<KForm<T>> = space.basis().iter().map(|v| KForm::from_coordinates(m, 2, v)).collect();
    let center = alg.center();
    let minimal_q = minimal_q(&basis, &center)?;
    let theorem = theorem_check(h, &basis, &center)?;
    Ok(HolonomyReport {
        dim: basis.len(),
        basis,
        iterations,
        curvature_dim,
        center_dim: center.dim(),
        minimal_q,
        theorem,
        idempotent,
        commutator_closed,
    })
}

/// Pairs `p` with `e_{2p−1}, e_{2p}` both central, if they span the center.
fn central_pairs<T: Scalar>(center: &Subspace<T>) -> Option<Vec<usize>> {
    let m = center.ambient_dim();
    let e = |i: usize| crate::linalg::unit::<T>(m, i - 1);
    let pairs: Vec<usize> =
        (1..=m / 2).filter(|&p| center.contains(&e(2 * p - 1)) && center.contains(&e(2 * p))).collect();
    (2 * pairs.len() == center.dim()).then_some(pairs)
}

/// When the center is spanned by adapted coordinate pairs, the relabelling
/// (for [`KForm::relabel`]) that moves those pairs last, keeping relative order.
pub fn center_last_permutation<T: Scalar>(center: &Subspace<T>) -> Option<Vec<usize>> {
    let pairs = central_pairs(center)?;
    let n = center.ambient_dim() / 2;
    let order: Vec<usize> = (1..=n).filter(|p| !pairs.contains(p)).chain(pairs.iter().copied()).collect();
    let mut perm = vec![0; 2 * n];
    for (new, &old) in order.iter().enumerate() {
        perm[2 * old - 2] = 2 * new + 1;
        perm[2 * old - 1] = 2 * new + 2;
    }
    Some(perm)
}

fn minimal_q<T: Scalar>(basis: &[KForm<T>], center: &Subspace<T>) -> Result<Option<usize>, BismutError> {
    let n = center.ambient_dim() / 2;
    let relabelled: Vec<KForm<T>> = match center_last_permutation(center) {
        Some(perm) => basis.iter().map(|b| b.relabel(&perm)).collect(),
        None => basis.to_vec(),
    };
    for q in 1..=n {
        let space = gamma_basis::<T>(n, q)?;
        let mut all = true;
        for b in &relabelled {
            if !in_gamma(b, &space)? {
                all = false;
                break;
            }
        }
        if all {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

fn theorem_check<T: Scalar>(
    h: &HermitianStructure<T>,
    basis: &[KForm<T>],
    center: &Subspace<T>,
) -> Result<TheoremCheck, BismutError> {
    let alg = h.algebra();
    let mut unmet = Vec::new();
    if !alg.is_lie_algebra() {
        unmet.push("Jacobi identity fails".to_string());
    }
    let unimodular = alg.is_unimodular();
    if !unimodular {
        unmet.push("algebra is not unimodular".to_string());
    }
    if !abelian_j(h)? {
        unmet.push("complex structure is not abelian".to_string());
    }
    if unimodular && !is_balanced(h)?.balanced {
        unmet.push("metric is not balanced".to_string());
    }
    let n = alg.dim() / 2;
    let bound = (center.dim().is_multiple_of(2) && center.dim() <= alg.dim()).then(|| n - center.dim() / 2);
    if !unmet.is_empty() {
        return Ok(TheoremCheck { unmet, bound, holds: None });
    }
    let mut holds = true;
    for b in basis {
        if !satisfies_gamma_conditions(b)? || !annihilates(b, center)? {
            holds = false;
            break;
        }
    }
    Ok(TheoremCheck { unmet, bound, holds: Some(holds) })
}

/// Left-invariant 1-forms parallel for the Bismut connection. For abelian `J`
/// these are exactly the duals of central elements; the two are compared.
pub fn parallel_one_forms<T: Scalar>(h: &HermitianStructure<T>) -> Result<Subspace<T>, BismutError> {
    require_adapted(h)?;
    if !abelian_j(h)? {
        return Err(BismutError::NotAbelian);
    }
    let sigma = bismut_forms(h)?;
    let m = h.algebra().dim();
    // (∇_{e_j} η)(e_s) = −Σ_k σ^k_s(e_j) η_k
    let mut rows = Vec::new();
    for j in 1..=m {
        let s = sigma.at(j);
        for col in 0..m {
            let row = s.column(col);
            if row.iter().any(|v| !v.is_zero()) {
                rows.push(row);
            }
        }
    }
    let parallel = Subspace::span(m, kernel(&rows, m));
    let center = h.algebra().center();
    if parallel != center {
        return Err(BismutError::Inconsistent(format!(
            "parallel 1-forms have dim {}, center has dim {}",
            parallel.dim(),
            center.dim()
        )));
    }
    Ok(parallel)
}

/// Scalar curvature of the Levi-Civita connection, `Σ_{r≠s} Ω^r_s(e_r, e_s)`.
pub fn riemannian_scalar_curvature<T: Scalar>(h: &HermitianStructure<T>) -> Result<T, BismutError> {
    let sigma = levi_civita_forms(h)?;
    let omega = curvature_forms(&sigma, h.algebra())?;
    let m = omega.dim();
    let mut total = T::zero();
    for r in 1..=m {
        for s in 1..=m {
            if r != s {
                total = total + omega.get(r, s).eval_basis(&[r, s]);
            }
        }
    }
    Ok(total)
}

/// `φ` images of the holonomy basis.
pub fn holonomy_matrices<T: Scalar>(report: &HolonomyReport<T>) -> Result<Vec<Matrix<T>>, BismutError> {
    report.basis.iter().map(|b| phi(b).map_err(Into::into)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::beta_r;
    use crate::liealg::Mode;
    use crate::{Algebra, Form, Hermitian, Q};

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn e(n: usize, idx: &[usize]) -> Form {
        Form::basis(n, idx)
    }

    fn g3() -> Hermitian {
        let mut des = vec![Form::zero(8, 2); 8];
        des[7] = &e(8, &[1, 2]) - &e(8, &[3, 4]);
        Hermitian::adapted(Algebra::from_differentials(des, Mode::Strict).unwrap()).unwrap()
    }

    #[test]
    fn levi_civita_values() {
        let lc = levi_civita_forms(&g3()).unwrap();
        assert_eq!(lc.get(1, 2).coeff(&[8]), Q::new((-1).into(), 2.into()));
        let mut des = vec![Form::zero(4, 2); 4];
        des[2] = e(4, &[1, 2]);
        let h3r = Hermitian::adapted(Algebra::from_differentials(des, Mode::Strict).unwrap()).unwrap();
        assert_eq!(levi_civita_forms(&h3r).unwrap().get(1, 2).coeff(&[3]), Q::new((-1).into(), 2.into()));
        let flat = Hermitian::adapted(Algebra::abelian(4)).unwrap();
        assert!(levi_civita_forms(&flat).unwrap().is_zero());
    }

    #[test]
    fn torsion_g3() {
        assert_eq!(bismut_torsion(&g3()).unwrap(), &e(8, &[1, 2, 8]) - &e(8, &[3, 4, 8]));
    }

    #[test]
    fn bismut_forms_g3() {
        let s = bismut_forms(&g3()).unwrap();
        assert_eq!(s.get(1, 2), &-e(8, &[8]));
        assert_eq!(s.get(3, 4), &e(8, &[8]));
        for i in 1..=8 {
            for j in 1..=8 {
                if i > 4 || j > 4 {
                    assert!(s.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn curvature_g3() {
        let h = g3();
        let s = bismut_forms(&h).unwrap();
        let omega = curvature_forms(&s, h.algebra()).unwrap();
        assert_eq!(omega.get(1, 2), &(&e(8, &[3, 4]) - &e(8, &[1, 2])));
        let r = curvature_endomorphisms(&omega);
        assert_eq!(r[0], ((1, 2), beta_r(4, 1)));
        let r56 = r.iter().find(|(k, _)| *k == (5, 6)).unwrap();
        assert!(r56.1.is_zero());
    }

    #[test]
    fn covariant_derivative_matches_commutator() {
        let h = g3();
        let s = bismut_forms(&h).unwrap();
        assert!(covariant_derivative_2form(&s, 8, &e(8, &[1, 2])).unwrap().is_zero());
        let gamma = &e(8, &[1, 3]) + &e(8, &[2, 7]);
        for j in 1..=8 {
            let direct = covariant_derivative_2form(&s, j, &gamma).unwrap();
            let via = s.at(j).commutator(&phi(&gamma).unwrap());
            assert_eq!(phi(&direct).unwrap(), via);
        }
        assert!(covariant_derivative_2form(&s, 1, &e(8, &[1])).is_err());
    }

    #[test]
    fn holonomy_g3() {
        let rep = holonomy_algebra(&g3()).unwrap();
        assert_eq!(rep.dim, 1);
        assert_eq!(rep.basis, vec![beta_r(4, 1)]);
        assert_eq!(rep.minimal_q, Some(2));
        assert_eq!(rep.theorem.bound, Some(2));
        assert_eq!(rep.theorem.holds, Some(true));
        assert!(rep.idempotent && rep.commutator_closed);
    }

    #[test]
    fn holonomy_abelian() {
        let rep = holonomy_algebra(&Hermitian::adapted(Algebra::abelian(6)).unwrap()).unwrap();
        assert_eq!(rep.dim, 0);
        assert_eq!(rep.theorem.holds, Some(true));
    }

    #[test]
    fn parallel_forms_g3() {
        let p = parallel_one_forms(&g3()).unwrap();
        let expected = Subspace::span(8, (5..=8).map(|i| crate::linalg::unit(8, i - 1)));
        assert_eq!(p, expected);
    }

    #[test]
    fn scalar_curvature_g3() {
        assert_eq!(riemannian_scalar_curvature(&g3()).unwrap(), q(-1));
        assert_eq!(riemannian_scalar_curvature(&Hermitian::adapted(Algebra::abelian(4)).unwrap()).unwrap(), q(0));
    }
}
