//! The generic 8-dimensional nilpotent family with an abelian balanced structure
//! and `de^1 = … = de^4 = 0`.

use std::sync::OnceLock;

use crate::forms::KForm;
use crate::hermitian::{beta_r, gamma_ij, HermitianStructure};
use crate::liealg::{Fingerprint, LieAlgebra, Mode};
use crate::linalg::{kernel, rank};
use crate::scalar::Scalar;

use super::named::{g1, g2, g3};
use super::CatalogError;

/// Coefficient names, in input order.
pub const FAMILY8_COEFFICIENTS: [&str; 22] = [
    "c12_5", "c13_5", "c14_5", "c12_6", "c13_6", "c14_6", "c12_7", "c34_7", "c13_7", "c14_7", "c15_7", "c16_7",
    "c35_7", "c36_7", "c12_8", "c34_8", "c13_8", "c14_8", "c15_8", "c16_8", "c35_8", "c36_8",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family8Class {
    JacobiFails,
    G1,
    G2,
    G3,
    /// Center of dimension 2, `de^5 = de^6 = 0`, 2-step.
    II1,
    /// Center of dimension 2, `de^5, de^6` independent, 3-step.
    II2,
    Other(String),
}

#[derive(Clone)]
pub struct Family8<T> {
    pub algebra: LieAlgebra<T>,
    pub jacobi_ok: bool,
    pub defects: Vec<(usize, KForm<T>)>,
    pub class: Family8Class,
}

impl<T: Scalar> std::fmt::Debug for Family8<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Family8")
            .field("algebra", &self.algebra)
            .field("jacobi_ok", &self.jacobi_ok)
            .field("defects", &self.defects)
            .field("class", &self.class)
            .finish()
    }
}

impl<T: Scalar> Family8<T> {
    /// The standard Hermitian structure, available when Jacobi holds.
    pub fn hermitian(&self) -> Result<HermitianStructure<T>, CatalogError> {
        if !self.jacobi_ok {
            return Err(CatalogError::Jacobi);
        }
        Ok(HermitianStructure::adapted(self.algebra.clone())?)
    }
}

/// Generators multiplying the `c^7` / `c^8` blocks, in coefficient order.
fn upper_generators<T: Scalar>() -> [KForm<T>; 8] {
    [
        &beta_r(4, 1) + &beta_r(4, 2),
        beta_r(4, 2),
        gamma_ij(4, 1, 3),
        gamma_ij(4, 1, 4),
        gamma_ij(4, 1, 5),
        gamma_ij(4, 1, 6),
        gamma_ij(4, 2, 5),
        gamma_ij(4, 2, 6),
    ]
}

fn lower_generators<T: Scalar>() -> [KForm<T>; 3] {
    [beta_r(4, 1), gamma_ij(4, 1, 3), gamma_ij(4, 1, 4)]
}

fn combine<T: Scalar>(gens: &[KForm<T>], coeffs: &[T]) -> KForm<T> {
    gens.iter().zip(coeffs).fold(KForm::zero(8, 2), |acc, (g, c)| &acc + &g.scale(c))
}

/// Structure equations `de^1, …, de^8` for the 22 coefficients.
pub fn family8_differentials<T: Scalar>(c: &[T; 22]) -> Vec<KForm<T>> {
    let low = lower_generators::<T>();
    let up = upper_generators::<T>();
    let mut des = vec![KForm::zero(8, 2); 4];
    des.push(combine(&low, &c[0..3]));
    des.push(combine(&low, &c[3..6]));
    des.push(combine(&up, &c[6..14]));
    des.push(combine(&up, &c[14..22]));
    des
}

pub fn family8<T: Scalar>(c: &[T; 22]) -> Family8<T> {
    let algebra =
        LieAlgebra::from_differentials(family8_differentials(c), Mode::Lax).expect("well-formed differentials");
    let defects = algebra.jacobi_defect();
    let jacobi_ok = defects.is_empty();
    let class = if jacobi_ok { classify(&algebra) } else { Family8Class::JacobiFails };
    Family8 { algebra, jacobi_ok, defects, class }
}

fn reference_fingerprints() -> &'static [Fingerprint; 3] {
    static CELL: OnceLock<[Fingerprint; 3]> = OnceLock::new();
    CELL.get_or_init(|| {
        [g1(), g2(), g3()].map(|h: Result<HermitianStructure<crate::Q>, CatalogError>| {
            h.expect("named entry").algebra().fingerprint()
        })
    })
}

fn classify<T: Scalar>(alg: &LieAlgebra<T>) -> Family8Class {
    let center = alg.center().dim();
    let step = alg.series().nilpotency_step;
    match center {
        4 => {
            let fp = alg.fingerprint();
            let [f1, f2, f3] = reference_fingerprints();
            if fp == *f1 {
                Family8Class::G1
            } else if fp == *f2 {
                Family8Class::G2
            } else if fp == *f3 {
                Family8Class::G3
            } else {
                Family8Class::Other("center of dimension 4 without a fingerprint match".into())
            }
        }
        2 => {
            let rows = vec![alg.de(5).coordinates(), alg.de(6).coordinates()];
            match (rank(&rows), step) {
                (0, Some(2)) => Family8Class::II1,
                (2, Some(3)) => Family8Class::II2,
                (r, s) => Family8Class::Other(format!("center of dimension 2 with rank(de5, de6) = {r}, step {s:?}")),
            }
        }
        d => Family8Class::Other(format!("center of dimension {d}")),
    }
}

/// Given the `c^5`, `c^6` blocks, a basis of the `c^7` (equivalently `c^8`)
/// blocks for which the Jacobi identity holds.
pub fn jacobi_kernel<T: Scalar>(c5: &[T; 3], c6: &[T; 3]) -> Vec<Vec<T>> {
    let low = lower_generators::<T>();
    let mut des = vec![KForm::zero(8, 2); 8];
    des[4] = combine(&low, c5);
    des[5] = combine(&low, c6);
    let alg = LieAlgebra::from_differentials(des, Mode::Lax).expect("well-formed");
    let images: Vec<Vec<T>> =
        upper_generators::<T>().iter().map(|g| g.differential(&alg).expect("same dimension").coordinates()).collect();
    // Columns are the generator images; solve Σ_a x_a d(G_a) = 0.
    let rows: Vec<Vec<T>> = (0..images[0].len()).map(|r| images.iter().map(|col| col[r].clone()).collect()).collect();
    kernel(&rows, 8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Form, Q};

    fn coeffs(set: &[(&str, i64)]) -> [Q; 22] {
        let mut c: [Q; 22] = std::array::from_fn(|_| Q::from_integer(0.into()));
        for (name, v) in set {
            let pos = FAMILY8_COEFFICIENTS.iter().position(|n| n == name).unwrap();
            c[pos] = Q::from_integer((*v).into());
        }
        c
    }

    #[test]
    fn all_zero_is_abelian() {
        let f = family8(&coeffs(&[]));
        assert!(f.jacobi_ok);
        assert_eq!(f.algebra.center().dim(), 8);
        assert!(matches!(f.class, Family8Class::Other(_)));
    }

    #[test]
    fn counterexample_fails_on_e7() {
        let f = family8(&coeffs(&[("c12_6", 1), ("c15_7", 1)]));
        assert!(!f.jacobi_ok);
        assert_eq!(f.defects, vec![(7, Form::basis(8, &[2, 3, 4]))]);
        assert_eq!(f.class, Family8Class::JacobiFails);
    }

    #[test]
    fn g1_from_coefficients() {
        let f = family8(&coeffs(&[("c12_6", 1), ("c13_7", 1), ("c14_8", 1)]));
        assert_eq!(f.class, Family8Class::G1);
    }

    #[test]
    fn kernel_gives_jacobi_solutions() {
        let one = Q::from_integer(1.into());
        let zero = Q::from_integer(0.into());
        let c5 = [zero.clone(), one.clone(), zero.clone()];
        let c6 = [zero.clone(), zero.clone(), one.clone()];
        let ker = jacobi_kernel(&c5, &c6);
        assert!(!ker.is_empty());
        for v in &ker {
            let mut c: [Q; 22] = std::array::from_fn(|_| zero.clone());
            c[0..3].clone_from_slice(&c5);
            c[3..6].clone_from_slice(&c6);
            c[6..14].clone_from_slice(v);
            assert!(family8(&c).jacobi_ok);
        }
    }
}
